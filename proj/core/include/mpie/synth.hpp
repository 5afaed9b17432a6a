// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mpie/edit.hpp"
#include "mpie/geometry.hpp"
#include "mpie/raster.hpp"
#include "mpie/scene.hpp"

namespace mpie {

/// A fronto-parallel labelled rectangle covering `rect` in the reference
/// image at distance `depth`.
struct SynthPrimitive {
  std::string kind = "box";  // "box" or "pole"; informational
  std::int32_t label = 0;
  double depth = 1.0;
  Rect rect;
};

struct SynthSpec {
  std::uint32_t seed = 0;
  int width = 64;
  int height = 48;
  double focal = 60.0;
  double d_near = 1.0;
  double d_far = 100.0;
  std::size_t num_planes = 32;
  std::size_t num_lifted = 3;
  std::size_t num_labels = 4;
  double ground_depth = 50.0;
  std::int32_t ground_label = 0;
  std::vector<SynthPrimitive> primitives;
  std::size_t random_primitives = 0;  // extra primitives drawn from `seed`
  std::vector<Pose> poses;            // ground truth is produced for each
};

/// Layout after snapping every surface to its nearest MPI plane.
struct SnappedSurface {
  std::int32_t label;
  std::size_t plane_index;
  double depth;  // the plane's distance
  Rect rect;     // reference pixels covered
};

struct SynthLayout {
  CameraIntrinsics intrinsics;
  std::vector<Plane> planes;
  SnappedSurface ground;
  std::vector<SnappedSurface> primitives;  // nearest first, stable on ties
};

struct GroundTruth {
  Pose pose;
  Raster depth;     // target-camera z of the first surface hit; 0 where void
  LabelMap labels;  // -1 where the ray misses every surface
};

struct SynthResult {
  HybridScene scene;
  SynthLayout layout;
  std::vector<GroundTruth> ground_truth;  // one per spec pose
  std::vector<std::string> warnings;
};

/// Deterministic for a given spec. Each reference pixel keeps a depth-ordered
/// stack of at most k-1 primitives followed by the ground; lifted layer s
/// holds the one-hot label of stack entry s (padded with the last entry), the
/// alpha of each entry's plane is 1, and the association is one-hot from
/// that plane to layer s. Off-screen primitives are reported in `warnings`.
SynthResult synth_scene(const SynthSpec& spec);

/// Ray-casts the layout (surfaces are the snapped rectangles, the ground
/// covers exactly the reference image) from a camera with intrinsics `k_tgt`
/// placed at `pose` relative to the reference.
GroundTruth analytic_ground_truth(const SynthLayout& layout, const CameraIntrinsics& k_tgt,
                                  const Pose& pose);

/// Marks pixels whose 3x3 neighbourhood contains a different label (void
/// included). Used to drop ambiguous occlusion-boundary pixels.
LabelMap boundary_band(const LabelMap& labels);

/// Spec JSON:
///   {"seed": 7, "width": 64, "height": 48, "focal": 60,
///    "planes": {"near": 1, "far": 100, "m": 32}, "k": 3, "num_labels": 4,
///    "ground": {"depth": 50, "label": 0},
///    "primitives": [{"kind": "pole", "label": 2, "depth": 5,
///                    "rect": [x, y, w, h]}, ...],
///    "random_primitives": 0,
///    "poses": [pose, ...] | "lateral": [x0, x1, ...]}
SynthSpec synth_spec_from_json(const nlohmann::json& j);

}  // namespace mpie
