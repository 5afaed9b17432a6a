// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mpie/depth.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "mpie/error.hpp"
#include "mpie/parallel.hpp"

namespace mpie {

namespace {

constexpr double kCoverageFloor = 1e-6;

Raster composite_plane_values(std::span<const Raster> alpha, std::span<const Plane> planes,
                              const std::vector<double>& values, DepthMode mode) {
  if (alpha.empty()) throw ValidationError("depth: empty alpha stack");
  if (alpha.size() != planes.size()) {
    throw ValidationError("depth: alpha and plane lists differ in length");
  }
  for (std::size_t i = 0; i < planes.size(); ++i) {
    if (!planes[i].is_fronto_parallel()) {
      std::ostringstream os;
      os << "depth: plane " << i << " is not fronto-parallel";
      throw ValidationError(os.str());
    }
    if (!alpha[i].same_size(alpha.front()) || alpha[i].channels() != 1) {
      std::ostringstream os;
      os << "depth: alpha " << i << " shape differs";
      throw ValidationError(os.str());
    }
  }

  const int w = alpha.front().width();
  const int h = alpha.front().height();
  const double fallback = values.back();
  Raster out(w, h, 1);
  parallel_rows(static_cast<std::size_t>(h), [&](std::size_t row) {
    const int y = static_cast<int>(row);
    for (int x = 0; x < w; ++x) {
      double acc = 0;
      double transmittance = 1;
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        const double a = alpha[i].at(x, y);
        acc += values[i] * a * transmittance;
        transmittance *= 1.0 - a;
      }
      if (mode == DepthMode::Normalized) {
        const double covered = 1.0 - transmittance;
        acc = covered > kCoverageFloor ? acc / covered : fallback;
      }
      out.at(x, y) = static_cast<float>(acc);
    }
  });
  return out;
}

}  // namespace

Raster depth_from_alpha(std::span<const Raster> alpha, std::span<const Plane> planes,
                        DepthMode mode) {
  std::vector<double> d;
  d.reserve(planes.size());
  for (const Plane& p : planes) d.push_back(p.distance());
  return composite_plane_values(alpha, planes, d, mode);
}

Raster inverse_depth_from_alpha(std::span<const Raster> alpha, std::span<const Plane> planes,
                                DepthMode mode) {
  std::vector<double> inv;
  inv.reserve(planes.size());
  for (const Plane& p : planes) inv.push_back(1.0 / p.distance());
  return composite_plane_values(alpha, planes, inv, mode);
}

Raster depth_to_disparity(const Raster& values, double fx, double baseline, DepthInput input) {
  if (!(fx > 0) || !(baseline > 0) || !std::isfinite(fx) || !std::isfinite(baseline)) {
    throw ValidationError("disparity: fx and baseline must be positive");
  }
  if (values.channels() != 1) throw ValidationError("disparity: expected a 1-channel raster");
  const double scale = fx * baseline;
  Raster out(values.width(), values.height(), 1);
  auto src = values.data();
  auto dst = out.data();
  if (input == DepthInput::InverseDepth) {
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = static_cast<float>(scale * src[i]);
    return out;
  }
  std::size_t bad = 0;
  for (float v : src) {
    if (!(v > 0.0f) || !std::isfinite(v)) ++bad;
  }
  if (bad != 0) {
    std::ostringstream os;
    os << "disparity: " << bad << " pixel(s) with non-positive depth";
    throw ValidationError(os.str());
  }
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = static_cast<float>(scale / src[i]);
  return out;
}

}  // namespace mpie
