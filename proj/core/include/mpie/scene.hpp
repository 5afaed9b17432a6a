// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "mpie/geometry.hpp"
#include "mpie/raster.hpp"

namespace mpie {

enum class ChannelKind { Color, Semantics, Features };

std::string_view to_string(ChannelKind kind);
/// Throws ValidationError on unknown names.
ChannelKind channel_kind_from_string(std::string_view name);

/// Full multi-plane image: one content and one alpha raster per plane,
/// nearest plane first.
struct MpiScene {
  std::vector<Plane> planes;
  std::vector<Raster> content;  // W x H x C each
  std::vector<Raster> alpha;    // W x H x 1 each, values in [0, 1]
  CameraIntrinsics intrinsics;
  ChannelKind channel_kind = ChannelKind::Color;

  std::size_t num_planes() const { return planes.size(); }
  int width() const { return intrinsics.width(); }
  int height() const { return intrinsics.height(); }
  int channels() const { return content.empty() ? 0 : content.front().channels(); }

  /// Checks list lengths, shared dimensions, alpha range, strictly increasing
  /// plane distances, and (for Semantics) per-pixel simplex membership
  /// within 1e-4. Throws ValidationError.
  void validate() const;
};

/// Compact representation: k lifted content layers, m alpha layers and a
/// per-pixel k x m association tensor.
///
/// `assoc` has k*m channels; channel j*m + i holds the affinity of lifted
/// layer j to MPI plane i.
struct HybridScene {
  std::vector<Raster> lifted;  // k rasters, W x H x l (or f)
  std::vector<Raster> alpha;   // m rasters, W x H x 1
  Raster assoc;                // W x H x (k*m), entries >= 0
  std::vector<Plane> planes;   // m planes
  CameraIntrinsics intrinsics;
  ChannelKind channel_kind = ChannelKind::Semantics;

  std::size_t num_lifted() const { return lifted.size(); }
  std::size_t num_planes() const { return planes.size(); }
  int width() const { return intrinsics.width(); }
  int height() const { return intrinsics.height(); }
  int channels() const { return lifted.empty() ? 0 : lifted.front().channels(); }

  /// Throws ValidationError on shape mismatch, k >= m, negative or
  /// non-finite association entries, alpha outside [0, 1].
  void validate() const;
};

/// Column-normalises a W x H x (k*m) association tensor: for each pixel and
/// plane i, the k entries {j*m + i} are divided by their sum. Columns whose
/// sum is <= 1e-8 become uniform 1/k. Throws ValidationError on negative or
/// non-finite entries.
Raster normalize_association(const Raster& assoc, std::size_t k, std::size_t m);

/// Per pixel, content_i = sum_j lifted_j * phi*_{j,i} with phi* the
/// column-normalised association. Alphas, planes and intrinsics carry over.
MpiScene expand_hybrid(const HybridScene& scene);

}  // namespace mpie
