// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mpie/parallel.hpp"
#include "mpie/raster.hpp"

namespace mpie {

namespace {

constexpr double kMinHomogeneousW = 1e-12;

}  // namespace

Raster warp(const Raster& img, const Homography& h, int out_width, int out_height,
            BorderPolicy border) {
  Raster out(out_width, out_height, img.channels());
  const Mat3 inv = h.inverse().matrix();
  parallel_rows(static_cast<std::size_t>(out_height), [&](std::size_t row) {
    const int v = static_cast<int>(row);
    for (int u = 0; u < out_width; ++u) {
      const Vec3 q = inv * Vec3(u, v, 1.0);
      // w <= 0 puts the pre-image behind a camera; leave the pixel empty.
      if (!(q.z() > kMinHomogeneousW)) continue;
      bilinear_sample(img, q.x() / q.z(), q.y() / q.z(), border, out.pixel(u, v));
    }
  });
  return out;
}

}  // namespace mpie
