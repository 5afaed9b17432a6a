// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include <png.h>

#include <array>
#include <csetjmp>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "mpie/error.hpp"
#include "mpie/raster_io.hpp"

namespace mpie {

namespace fs = std::filesystem;

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open " + path.string(), path.string());
  return f;
}

// Labels map to the bit-interleaved colour table commonly used for
// segmentation palettes; label 0 is black.
std::array<png_color, 256> label_palette() {
  std::array<png_color, 256> pal{};
  for (int i = 0; i < 256; ++i) {
    int r = 0, g = 0, b = 0, c = i;
    for (int j = 7; j >= 0; --j) {
      r |= ((c >> 0) & 1) << j;
      g |= ((c >> 1) & 1) << j;
      b |= ((c >> 2) & 1) << j;
      c >>= 3;
    }
    pal[static_cast<std::size_t>(i)] = png_color{static_cast<png_byte>(r), static_cast<png_byte>(g),
                                                 static_cast<png_byte>(b)};
  }
  return pal;
}

class PngWriter {
 public:
  explicit PngWriter(const fs::path& path) : path_(path), file_(open_file(path, "wb")) {
    png_ = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png_) info_ = png_create_info_struct(png_);
    if (!png_ || !info_) throw IoError("libpng: allocation failed", path.string());
  }
  ~PngWriter() { png_destroy_write_struct(&png_, &info_); }
  PngWriter(const PngWriter&) = delete;
  PngWriter& operator=(const PngWriter&) = delete;

  // rows: height pointers to packed 8-bit rows.
  void write(int width, int height, int color_type, const std::array<png_color, 256>* palette,
             std::vector<png_bytep>& rows) {
    if (setjmp(png_jmpbuf(png_))) {
      throw IoError("libpng: failed writing " + path_.string(), path_.string());
    }
    png_init_io(png_, file_.get());
    png_set_IHDR(png_, info_, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
                 color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    if (palette) png_set_PLTE(png_, info_, palette->data(), 256);
    png_write_info(png_, info_);
    png_write_image(png_, rows.data());
    png_write_end(png_, nullptr);
  }

 private:
  fs::path path_;
  FilePtr file_;
  png_structp png_ = nullptr;
  png_infop info_ = nullptr;
};

struct Decoded {
  int width = 0;
  int height = 0;
  int channels = 0;
  int color_type = 0;
  std::vector<png_byte> pixels;
};

class PngReader {
 public:
  explicit PngReader(const fs::path& path) : path_(path), file_(open_file(path, "rb")) {
    png_byte sig[8];
    if (std::fread(sig, 1, 8, file_.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
      throw IoError(path.filename().string() + ": not a PNG file", path.string());
    }
    png_ = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png_) info_ = png_create_info_struct(png_);
    if (!png_ || !info_) throw IoError("libpng: allocation failed", path.string());
  }
  ~PngReader() { png_destroy_read_struct(&png_, &info_, nullptr); }
  PngReader(const PngReader&) = delete;
  PngReader& operator=(const PngReader&) = delete;

  // Only 8-bit images are accepted; palettes are returned as raw indices.
  Decoded read() {
    Decoded d;
    std::vector<png_bytep> rows;
    bool unsupported = false;
    if (setjmp(png_jmpbuf(png_))) {
      throw IoError(path_.filename().string() + ": corrupt PNG", path_.string());
    }
    png_init_io(png_, file_.get());
    png_set_sig_bytes(png_, 8);
    png_read_info(png_, info_);
    const int bit_depth = png_get_bit_depth(png_, info_);
    d.color_type = png_get_color_type(png_, info_);
    d.width = static_cast<int>(png_get_image_width(png_, info_));
    d.height = static_cast<int>(png_get_image_height(png_, info_));
    d.channels = png_get_channels(png_, info_);
    if (bit_depth != 8 || png_get_interlace_type(png_, info_) != PNG_INTERLACE_NONE) {
      unsupported = true;
    } else {
      d.pixels.resize(static_cast<std::size_t>(d.width) * d.height * d.channels);
      rows.resize(static_cast<std::size_t>(d.height));
      for (int y = 0; y < d.height; ++y) {
        rows[static_cast<std::size_t>(y)] =
            d.pixels.data() + static_cast<std::size_t>(y) * d.width * d.channels;
      }
      png_read_image(png_, rows.data());
      png_read_end(png_, nullptr);
    }
    if (unsupported) {
      throw IoError(path_.filename().string() + ": unsupported PNG bit depth or interlacing (need 8-bit)",
                    path_.string());
    }
    return d;
  }

 private:
  fs::path path_;
  FilePtr file_;
  png_structp png_ = nullptr;
  png_infop info_ = nullptr;
};

}  // namespace

void write_label_png(const fs::path& path, const LabelMap& labels, std::int32_t void_value) {
  std::vector<png_byte> bytes(labels.pixel_count());
  auto src = labels.data();
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    std::int32_t v = src[i] < 0 ? void_value : src[i];
    if (v < 0 || v > 255) {
      throw ValidationError("label png: label " + std::to_string(src[i]) + " does not fit in 8 bits");
    }
    bytes[i] = static_cast<png_byte>(v);
  }
  std::vector<png_bytep> rows(static_cast<std::size_t>(labels.height()));
  for (int y = 0; y < labels.height(); ++y) {
    rows[static_cast<std::size_t>(y)] = bytes.data() + static_cast<std::size_t>(y) * labels.width();
  }
  const auto palette = label_palette();
  PngWriter(path).write(labels.width(), labels.height(), PNG_COLOR_TYPE_PALETTE, &palette, rows);
}

LabelMap read_label_png(const fs::path& path, std::int32_t void_value) {
  Decoded d = PngReader(path).read();
  if (!(d.color_type == PNG_COLOR_TYPE_PALETTE || d.color_type == PNG_COLOR_TYPE_GRAY) ||
      d.channels != 1) {
    throw IoError(path.filename().string() + ": label PNG must be 8-bit palette or grayscale",
                  path.string());
  }
  std::vector<std::int32_t> labels(d.pixels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::int32_t v = d.pixels[i];
    labels[i] = (void_value >= 0 && v == void_value) ? -1 : v;
  }
  return LabelMap(d.width, d.height, std::move(labels));
}

void write_preview_png(const fs::path& path, const Raster& r) {
  int color_type;
  switch (r.channels()) {
    case 1: color_type = PNG_COLOR_TYPE_GRAY; break;
    case 3: color_type = PNG_COLOR_TYPE_RGB; break;
    case 4: color_type = PNG_COLOR_TYPE_RGB_ALPHA; break;
    default: throw ValidationError("preview png: need 1, 3 or 4 channels");
  }
  std::vector<png_byte> bytes(r.data().size());
  auto src = r.data();
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = quantize_unit(src[i]);
  const std::size_t stride = static_cast<std::size_t>(r.width()) * r.channels();
  std::vector<png_bytep> rows(static_cast<std::size_t>(r.height()));
  for (int y = 0; y < r.height(); ++y) rows[static_cast<std::size_t>(y)] = bytes.data() + y * stride;
  PngWriter(path).write(r.width(), r.height(), color_type, nullptr, rows);
}

Raster read_preview_png(const fs::path& path) {
  Decoded d = PngReader(path).read();
  if (d.color_type == PNG_COLOR_TYPE_PALETTE) {
    throw IoError(path.filename().string() + ": palette PNG is a label map, not a preview",
                  path.string());
  }
  std::vector<float> data(d.pixels.size());
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = static_cast<float>(d.pixels[i]) / 255.0f;
  return Raster(d.width, d.height, d.channels, std::move(data));
}

}  // namespace mpie
