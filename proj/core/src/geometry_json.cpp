// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mpie/geometry_json.hpp"

#include <string>

#include "mpie/error.hpp"

namespace mpie {

using nlohmann::json;

namespace {

double number(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number()) {
    throw ValidationError(std::string("json: expected number field '") + key + "'");
  }
  return j.at(key).get<double>();
}

Vec3 vec3(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 3) {
    throw ValidationError(std::string("json: expected 3-element array '") + key + "'");
  }
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    const auto& e = j.at(key)[i];
    if (!e.is_number()) throw ValidationError(std::string("json: non-numeric entry in '") + key + "'");
    v[i] = e.get<double>();
  }
  return v;
}

}  // namespace

json to_json(const CameraIntrinsics& k) {
  return json{{"fx", k.fx()},       {"fy", k.fy()},        {"cx", k.cx()},
              {"cy", k.cy()},       {"width", k.width()},  {"height", k.height()}};
}

json to_json(const Pose& p) {
  json rot = json::array();
  for (int r = 0; r < 3; ++r) {
    rot.push_back({p.rotation()(r, 0), p.rotation()(r, 1), p.rotation()(r, 2)});
  }
  const Vec3& t = p.translation();
  return json{{"rotation", rot}, {"translation", {t.x(), t.y(), t.z()}}};
}

json to_json(const Plane& p) {
  const Vec3& n = p.normal();
  return json{{"normal", {n.x(), n.y(), n.z()}}, {"distance", p.distance()}};
}

CameraIntrinsics intrinsics_from_json(const json& j) {
  const double w = number(j, "width");
  const double h = number(j, "height");
  if (w != static_cast<int>(w) || h != static_cast<int>(h)) {
    throw ValidationError("json: intrinsics width/height must be integers");
  }
  return CameraIntrinsics(number(j, "fx"), number(j, "fy"), number(j, "cx"), number(j, "cy"),
                          static_cast<int>(w), static_cast<int>(h));
}

Pose pose_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rotation") || !j.at("rotation").is_array()) {
    throw ValidationError("json: pose needs a 'rotation' array");
  }
  const json& rj = j.at("rotation");
  std::vector<double> flat;
  if (rj.size() == 3 && rj[0].is_array()) {
    for (const auto& row : rj) {
      if (!row.is_array() || row.size() != 3) throw ValidationError("json: rotation must be 3x3");
      for (const auto& e : row) {
        if (!e.is_number()) throw ValidationError("json: non-numeric rotation entry");
        flat.push_back(e.get<double>());
      }
    }
  } else if (rj.size() == 9) {
    for (const auto& e : rj) {
      if (!e.is_number()) throw ValidationError("json: non-numeric rotation entry");
      flat.push_back(e.get<double>());
    }
  } else {
    throw ValidationError("json: rotation must be 3x3 or a flat array of 9");
  }
  Mat3 r;
  for (int i = 0; i < 9; ++i) r(i / 3, i % 3) = flat[static_cast<std::size_t>(i)];
  return Pose(r, vec3(j, "translation"));
}

Plane plane_from_json(const json& j) { return Plane(vec3(j, "normal"), number(j, "distance")); }

}  // namespace mpie
