// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <nlohmann/json.hpp>

#include "mpie/geometry.hpp"

// JSON schema shared by the CLI and scene manifests:
//   intrinsics: {"fx", "fy", "cx", "cy", "width", "height"}
//   pose:       {"rotation": [[r00, r01, r02], [..], [..]], "translation": [x, y, z]}
//               (a flat row-major array of 9 is accepted for "rotation")
//   plane:      {"normal": [nx, ny, nz], "distance": d}
// Missing or mistyped fields raise ValidationError.

namespace mpie {

nlohmann::json to_json(const CameraIntrinsics& k);
nlohmann::json to_json(const Pose& p);
nlohmann::json to_json(const Plane& p);

CameraIntrinsics intrinsics_from_json(const nlohmann::json& j);
Pose pose_from_json(const nlohmann::json& j);
Plane plane_from_json(const nlohmann::json& j);

}  // namespace mpie
