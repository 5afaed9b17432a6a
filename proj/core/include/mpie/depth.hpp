// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "mpie/geometry.hpp"
#include "mpie/raster.hpp"

namespace mpie {

enum class DepthMode {
  Raw,         ///< plain composite of plane values; transparent pixels tend to 0
  Normalized,  ///< divided by the covered fraction 1 - T; empty pixels read as the far plane
};

/// Composites the plane distances d_i with the alpha stack (nearest first):
/// Z(p) = sum_i d_i a(p,i) prod_{j<i} (1 - a(p,j)). Normalized mode divides by
/// 1 - T(p) where that exceeds 1e-6 and returns d_m elsewhere. Planes must be
/// fronto-parallel.
Raster depth_from_alpha(std::span<const Raster> alpha, std::span<const Plane> planes,
                        DepthMode mode);

/// Same composite on 1/d_i; Normalized fallback is 1/d_m.
Raster inverse_depth_from_alpha(std::span<const Raster> alpha, std::span<const Plane> planes,
                                DepthMode mode);

inline constexpr double kStereoBaseline = 0.54;  // metres

enum class DepthInput { Depth, InverseDepth };

/// Disparity fx * baseline / depth, or fx * baseline * inverse_depth when
/// `input` is InverseDepth. Depth input with non-positive pixels throws
/// ValidationError stating how many.
Raster depth_to_disparity(const Raster& values, double fx, double baseline = kStereoBaseline,
                          DepthInput input = DepthInput::Depth);

}  // namespace mpie
