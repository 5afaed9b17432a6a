// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mpie/geometry.hpp"

namespace mpie {

/// Dense W x H x C float image, row-major and channel-interleaved.
class Raster {
 public:
  Raster() = default;
  /// Throws ValidationError unless width, height, channels are all >= 1.
  Raster(int width, int height, int channels, float fill = 0.0f);
  /// Takes ownership of `data`; its length must be width * height * channels.
  Raster(int width, int height, int channels, std::vector<float> data);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }
  bool empty() const { return data_.empty(); }

  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }

  float& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }
  float at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }

  std::span<float> pixel(int x, int y) {
    return std::span<float>(data_).subspan(index(x, y, 0), channels_);
  }
  std::span<const float> pixel(int x, int y) const {
    return std::span<const float>(data_).subspan(index(x, y, 0), channels_);
  }

  std::span<float> row(int y) {
    return std::span<float>(data_).subspan(index(0, y, 0),
                                           static_cast<std::size_t>(width_) * channels_);
  }
  std::span<const float> row(int y) const {
    return std::span<const float>(data_).subspan(index(0, y, 0),
                                                 static_cast<std::size_t>(width_) * channels_);
  }

  bool same_shape(const Raster& o) const {
    return width_ == o.width_ && height_ == o.height_ && channels_ == o.channels_;
  }
  bool same_size(const Raster& o) const { return width_ == o.width_ && height_ == o.height_; }

  bool all_finite() const;

  /// Bitwise equality of shape and every float (distinguishes -0 and 0).
  bool bitwise_equal(const Raster& o) const;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<float> data_;
};

/// One integer label per pixel. Negative values mean "no label" (void).
class LabelMap {
 public:
  LabelMap() = default;
  LabelMap(int width, int height, std::int32_t fill = 0);
  LabelMap(int width, int height, std::vector<std::int32_t> labels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const { return labels_.size(); }

  std::int32_t& at(int x, int y) { return labels_[static_cast<std::size_t>(y) * width_ + x]; }
  std::int32_t at(int x, int y) const { return labels_[static_cast<std::size_t>(y) * width_ + x]; }

  std::span<std::int32_t> data() { return labels_; }
  std::span<const std::int32_t> data() const { return labels_; }

  bool operator==(const LabelMap&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::int32_t> labels_;
};

enum class BorderPolicy {
  Transparent,  ///< samples outside [0, w-1] x [0, h-1] read as zero in every channel
  Clamp,        ///< coordinates clamp to the edge texel
};

/// Bilinear interpolation of the four texels around (x, y), written to
/// `out` (length = channels). Weights are computed in double.
void bilinear_sample(const Raster& img, double x, double y, BorderPolicy border,
                     std::span<float> out);
std::vector<float> bilinear_sample(const Raster& img, double x, double y, BorderPolicy border);

/// Inverse warping: output pixel p samples `img` at h^-1(p). `h` is the
/// forward map from input pixels to output pixels. Output pixels whose
/// pre-image has homogeneous w <= 1e-12 read as zero. Rows run in parallel;
/// the result does not depend on the thread count.
Raster warp(const Raster& img, const Homography& h, int out_width, int out_height,
            BorderPolicy border = BorderPolicy::Transparent);

}  // namespace mpie
