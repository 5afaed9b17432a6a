// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "mpie/geometry.hpp"
#include "mpie/raster.hpp"
#include "mpie/scene.hpp"

namespace mpie {

struct CompositeOutput {
  Raster image;          // W x H x C
  Raster transmittance;  // W x H x 1, prod_z (1 - alpha_z)
};

/// Over-compositing of planes ordered nearest first:
///
///   image = sum_z content_z * alpha_z * prod_{j<z} (1 - alpha_j)
///
/// The plane loop runs front to back inside each pixel, so the result is
/// independent of how rows are scheduled. Throws ValidationError on empty
/// input or mismatched dimensions.
CompositeOutput composite(std::span<const Raster> content, std::span<const Raster> alpha);

/// Divides the composited image by (1 - transmittance) where that exceeds
/// 1e-6; fully transparent pixels become 0.
Raster normalize_by_coverage(const CompositeOutput& out);

/// Warps every plane's content and alpha with its own reference->target
/// homography, then composites. Throws GeometryError carrying the plane
/// index if a plane's homography is degenerate.
CompositeOutput render_view(const MpiScene& scene, const CameraIntrinsics& k_tgt,
                            const Pose& theta,
                            BorderPolicy border = BorderPolicy::Transparent);

struct SemanticRender {
  LabelMap labels;       // argmax, ties toward the lowest label
  Raster probabilities;  // raw composited probabilities
  Raster transmittance;
};

/// Per-pixel argmax over channels, lowest index wins ties.
LabelMap argmax_labels(const Raster& probabilities);

/// render_view on a Semantics scene plus argmax labels. Throws
/// ValidationError for other channel kinds.
SemanticRender render_semantics(const MpiScene& scene, const CameraIntrinsics& k_tgt,
                                const Pose& theta,
                                BorderPolicy border = BorderPolicy::Transparent);

}  // namespace mpie
