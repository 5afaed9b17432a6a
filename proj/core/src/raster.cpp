// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mpie/raster.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "mpie/error.hpp"

namespace mpie {

namespace {

std::size_t checked_size(int width, int height, int channels) {
  if (width < 1 || height < 1 || channels < 1) {
    throw ValidationError("raster: width, height and channels must be >= 1");
  }
  return static_cast<std::size_t>(width) * height * channels;
}

}  // namespace

Raster::Raster(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels),
      data_(checked_size(width, height, channels), fill) {}

Raster::Raster(int width, int height, int channels, std::vector<float> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  if (data_.size() != checked_size(width, height, channels)) {
    throw ValidationError("raster: data length does not match width*height*channels");
  }
}

bool Raster::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](float v) { return std::isfinite(v); });
}

bool Raster::bitwise_equal(const Raster& o) const {
  return same_shape(o) &&
         (data_.empty() || std::memcmp(data_.data(), o.data_.data(), data_.size() * sizeof(float)) == 0);
}

LabelMap::LabelMap(int width, int height, std::int32_t fill)
    : width_(width), height_(height),
      labels_(checked_size(width, height, 1), fill) {}

LabelMap::LabelMap(int width, int height, std::vector<std::int32_t> labels)
    : width_(width), height_(height), labels_(std::move(labels)) {
  if (labels_.size() != checked_size(width, height, 1)) {
    throw ValidationError("label map: data length does not match width*height");
  }
}

void bilinear_sample(const Raster& img, double x, double y, BorderPolicy border,
                     std::span<float> out) {
  const int w = img.width();
  const int h = img.height();
  const int c = img.channels();
  if (!std::isfinite(x) || !std::isfinite(y)) {
    std::fill(out.begin(), out.end(), 0.0f);
    return;
  }
  if (border == BorderPolicy::Transparent) {
    if (x < 0.0 || y < 0.0 || x > w - 1 || y > h - 1) {
      std::fill(out.begin(), out.end(), 0.0f);
      return;
    }
  } else {
    x = std::clamp(x, 0.0, static_cast<double>(w - 1));
    y = std::clamp(y, 0.0, static_cast<double>(h - 1));
  }

  const int x0 = std::min(static_cast<int>(std::floor(x)), w - 1);
  const int y0 = std::min(static_cast<int>(std::floor(y)), h - 1);
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  const double w00 = (1.0 - fx) * (1.0 - fy);
  const double w10 = fx * (1.0 - fy);
  const double w01 = (1.0 - fx) * fy;
  const double w11 = fx * fy;

  const auto p00 = img.pixel(x0, y0);
  const auto p10 = img.pixel(x1, y0);
  const auto p01 = img.pixel(x0, y1);
  const auto p11 = img.pixel(x1, y1);
  for (int k = 0; k < c; ++k) {
    const double v = w00 * p00[k] + w10 * p10[k] + w01 * p01[k] + w11 * p11[k];
    out[static_cast<std::size_t>(k)] = static_cast<float>(v);
  }
}

std::vector<float> bilinear_sample(const Raster& img, double x, double y, BorderPolicy border) {
  std::vector<float> out(static_cast<std::size_t>(img.channels()));
  bilinear_sample(img, x, y, border, out);
  return out;
}

}  // namespace mpie
