// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mpie/raster_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "mpie/error.hpp"

namespace mpie {

namespace fs = std::filesystem;

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint32_t byteswap32(std::uint32_t v) {
  return (v >> 24) | ((v >> 8) & 0xff00u) | ((v << 8) & 0xff0000u) | (v << 24);
}

std::vector<std::uint8_t> slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string(), path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void dump(const fs::path& path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string(), path.string());
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw IoError("short write to " + path.string(), path.string());
}

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

}  // namespace

std::vector<std::uint8_t> encode_raw(const Raster& r) {
  const auto values = r.data();
  std::vector<std::uint8_t> out(20 + values.size() * 4);
  std::copy(kRawMagic.begin(), kRawMagic.end(), reinterpret_cast<char*>(out.data()));
  auto put = [&](std::size_t offset, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out[offset + i] = static_cast<std::uint8_t>(v >> (8 * i));
  };
  put(8, static_cast<std::uint32_t>(r.width()));
  put(12, static_cast<std::uint32_t>(r.height()));
  put(16, static_cast<std::uint32_t>(r.channels()));
  for (std::size_t i = 0; i < values.size(); ++i) put(20 + 4 * i, std::bit_cast<std::uint32_t>(values[i]));
  return out;
}

Raster decode_raw(std::span<const std::uint8_t> bytes, const fs::path& source) {
  const std::string name = source.empty() ? std::string("<memory>") : source.filename().string();
  if (bytes.size() < 20 || std::memcmp(bytes.data(), kRawMagic.data(), kRawMagic.size()) != 0) {
    throw IoError(name + ": not an MPIR1 raster (bad magic or header)", source.string());
  }
  const std::uint32_t w = get_u32(bytes.data() + 8);
  const std::uint32_t h = get_u32(bytes.data() + 12);
  const std::uint32_t c = get_u32(bytes.data() + 16);
  if (w == 0 || h == 0 || c == 0 || w > (1u << 20) || h > (1u << 20) || c > (1u << 16)) {
    throw IoError(name + ": invalid raster dimensions", source.string());
  }
  const std::uint64_t count = std::uint64_t{w} * h * c;
  if (bytes.size() - 20 != count * 4) {
    std::ostringstream os;
    os << name << ": truncated or oversized raster (expected " << count * 4 << " payload bytes, got "
       << bytes.size() - 20 << ")";
    throw IoError(os.str(), source.string());
  }
  std::vector<float> data(static_cast<std::size_t>(count));
  const std::uint8_t* p = bytes.data() + 20;
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = std::bit_cast<float>(get_u32(p + 4 * i));
  return Raster(static_cast<int>(w), static_cast<int>(h), static_cast<int>(c), std::move(data));
}

void write_raw(const fs::path& path, const Raster& r) {
  const auto bytes = encode_raw(r);
  dump(path, bytes.data(), bytes.size());
}

Raster read_raw(const fs::path& path) {
  const auto bytes = slurp(path);
  return decode_raw(bytes, path);
}

void write_pfm(const fs::path& path, const Raster& r) {
  if (r.channels() != 1 && r.channels() != 3) {
    throw ValidationError("pfm: only 1- or 3-channel rasters can be written");
  }
  std::ostringstream header;
  header << (r.channels() == 3 ? "PF" : "Pf") << '\n'
         << r.width() << ' ' << r.height() << '\n'
         << "-1.0" << '\n';
  std::vector<std::uint8_t> out;
  const std::string hs = header.str();
  out.insert(out.end(), hs.begin(), hs.end());
  // PFM stores the bottom row first.
  for (int y = r.height() - 1; y >= 0; --y) {
    for (float v : r.row(y)) put_u32(out, std::bit_cast<std::uint32_t>(v));
  }
  dump(path, out.data(), out.size());
}

Raster read_pfm(const fs::path& path) {
  const auto bytes = slurp(path);
  const std::string name = path.filename().string();
  std::size_t pos = 0;
  auto token = [&]() {
    while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
    std::string t;
    while (pos < bytes.size() && !std::isspace(bytes[pos])) t.push_back(static_cast<char>(bytes[pos++]));
    return t;
  };
  const std::string magic = token();
  int channels;
  if (magic == "PF") {
    channels = 3;
  } else if (magic == "Pf") {
    channels = 1;
  } else {
    throw IoError(name + ": malformed PFM header (magic)", path.string());
  }
  int w = 0;
  int h = 0;
  double scale = 0;
  try {
    w = std::stoi(token());
    h = std::stoi(token());
    scale = std::stod(token());
  } catch (const std::exception&) {
    throw IoError(name + ": malformed PFM header", path.string());
  }
  if (w <= 0 || h <= 0 || scale == 0.0 || pos >= bytes.size()) {
    throw IoError(name + ": malformed PFM header", path.string());
  }
  ++pos;  // single whitespace byte after the scale
  const std::size_t count = static_cast<std::size_t>(w) * h * channels;
  if (bytes.size() - pos != count * 4) {
    throw IoError(name + ": truncated PFM payload", path.string());
  }
  const bool big_endian = scale > 0;
  std::vector<float> data(count);
  const std::size_t row_len = static_cast<std::size_t>(w) * channels;
  for (int file_row = 0; file_row < h; ++file_row) {
    const int y = h - 1 - file_row;
    for (std::size_t i = 0; i < row_len; ++i) {
      std::uint32_t bits = get_u32(bytes.data() + pos + 4 * (file_row * row_len + i));
      if (big_endian) bits = byteswap32(bits);
      data[static_cast<std::size_t>(y) * row_len + i] = std::bit_cast<float>(bits);
    }
  }
  return Raster(w, h, channels, std::move(data));
}

std::uint8_t quantize_unit(float v) {
  const double c = std::clamp(static_cast<double>(std::isnan(v) ? 0.0f : v), 0.0, 1.0);
  return static_cast<std::uint8_t>(std::floor(c * 255.0 + 0.5));
}

Raster read_raster(const fs::path& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".raw") return read_raw(path);
  if (ext == ".pfm") return read_pfm(path);
  if (ext == ".png") return read_preview_png(path);
  throw ValidationError("unsupported raster extension '" + ext + "' (" + path.string() + ")");
}

void write_raster(const fs::path& path, const Raster& r) {
  const std::string ext = lower_extension(path);
  if (ext == ".raw") return write_raw(path, r);
  if (ext == ".pfm") return write_pfm(path, r);
  if (ext == ".png") return write_preview_png(path, r);
  throw ValidationError("unsupported raster extension '" + ext + "' (" + path.string() + ")");
}

}  // namespace mpie
