// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <variant>

#include <nlohmann/json.hpp>

#include "mpie/scene.hpp"

namespace mpie {

inline constexpr int kSceneFormatVersion = 1;
inline constexpr const char* kManifestName = "scene.json";

/// A scene directory holds `scene.json` plus `.raw` rasters:
///
///   {
///     "format_version": 1,
///     "scene_type": "hybrid" | "mpi",
///     "channel_kind": "color" | "semantics" | "features",
///     "dims": {"width": W, "height": H, "channels": C, "k": k, "m": m},
///     "intrinsics": {...},
///     "planes": [{"normal": [0,0,1], "distance": d}, ...]
///        or "plane_set": {"near": d0, "far": d1, "m": m},
///     "files": {"alpha":   ["alpha_00.raw", ...],
///               "lifted":  ["lifted_00.raw", ...],   // hybrid
///               "assoc":   "assoc.raw",              // hybrid
///               "content": ["content_00.raw", ...]}  // mpi
///   }
///
/// "k" and the hybrid file entries are absent for mpi scenes.
using AnyScene = std::variant<HybridScene, MpiScene>;

/// Writes into `dir` (created if missing). Existing files of the same name are
/// overwritten; callers wanting atomic output write to a temp dir and rename.
nlohmann::json save_scene(const HybridScene& scene, const std::filesystem::path& dir);
nlohmann::json save_scene(const MpiScene& scene, const std::filesystem::path& dir);
nlohmann::json save_scene(const AnyScene& scene, const std::filesystem::path& dir);

/// Throws IoError naming the file on missing/truncated rasters, version
/// mismatch or a raster whose dims disagree with the manifest.
AnyScene load_scene(const std::filesystem::path& dir);

/// Expands hybrid scenes; MPI scenes pass through.
MpiScene as_mpi(const AnyScene& scene);

}  // namespace mpie
