// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mpie/scene_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "mpie/error.hpp"
#include "mpie/geometry_json.hpp"
#include "mpie/raster_io.hpp"

namespace mpie {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string numbered(const char* stem, std::size_t i, std::size_t count) {
  const int digits = count > 100 ? static_cast<int>(std::to_string(count - 1).size()) : 2;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%0*zu.raw", stem, digits, i);
  return buf;
}

json planes_json(const std::vector<Plane>& planes) {
  json arr = json::array();
  for (const Plane& p : planes) arr.push_back(to_json(p));
  return arr;
}

void write_manifest(const fs::path& dir, const json& manifest) {
  const fs::path path = dir / kManifestName;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string(), path.string());
  out << manifest.dump(2) << '\n';
  if (!out) throw IoError("short write to " + path.string(), path.string());
}

json write_stack(const fs::path& dir, const char* stem, const std::vector<Raster>& stack) {
  json names = json::array();
  for (std::size_t i = 0; i < stack.size(); ++i) {
    const std::string name = numbered(stem, i, stack.size());
    write_raw(dir / name, stack[i]);
    names.push_back(name);
  }
  return names;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create directory " + dir.string(), dir.string());
  }
}

json common_header(const char* type, ChannelKind kind, const CameraIntrinsics& k, int channels,
                   std::size_t m) {
  return json{{"format_version", kSceneFormatVersion},
              {"scene_type", type},
              {"channel_kind", std::string(to_string(kind))},
              {"dims",
               {{"width", k.width()}, {"height", k.height()}, {"channels", channels}, {"m", m}}},
              {"intrinsics", to_json(k)}};
}

[[noreturn]] void fail(const fs::path& file, const std::string& why) {
  throw IoError(file.filename().string() + ": " + why, file.string());
}

std::size_t dim(const json& dims, const char* key, const fs::path& manifest) {
  if (!dims.contains(key) || !dims.at(key).is_number_unsigned()) {
    fail(manifest, std::string("dims.") + key + " missing or not a non-negative integer");
  }
  return dims.at(key).get<std::size_t>();
}

Raster load_checked(const fs::path& dir, const json& name, int w, int h, int c) {
  if (!name.is_string()) fail(dir / kManifestName, "file entries must be strings");
  const fs::path path = dir / name.get<std::string>();
  if (!fs::exists(path)) fail(path, "missing raster file");
  Raster r = read_raw(path);
  if (r.width() != w || r.height() != h || r.channels() != c) {
    std::ostringstream os;
    os << "raster is " << r.width() << "x" << r.height() << "x" << r.channels()
       << " but the manifest declares " << w << "x" << h << "x" << c;
    fail(path, os.str());
  }
  return r;
}

std::vector<Raster> load_stack(const fs::path& dir, const json& files, const char* key,
                               std::size_t count, int w, int h, int c) {
  const fs::path manifest = dir / kManifestName;
  if (!files.contains(key) || !files.at(key).is_array() || files.at(key).size() != count) {
    std::ostringstream os;
    os << "files." << key << " must list " << count << " rasters";
    fail(manifest, os.str());
  }
  std::vector<Raster> out;
  out.reserve(count);
  for (const auto& name : files.at(key)) out.push_back(load_checked(dir, name, w, h, c));
  return out;
}

}  // namespace

json save_scene(const HybridScene& scene, const fs::path& dir) {
  scene.validate();
  ensure_dir(dir);
  json manifest = common_header("hybrid", scene.channel_kind, scene.intrinsics, scene.channels(),
                                scene.num_planes());
  manifest["dims"]["k"] = scene.num_lifted();
  manifest["planes"] = planes_json(scene.planes);
  json files;
  files["alpha"] = write_stack(dir, "alpha", scene.alpha);
  files["lifted"] = write_stack(dir, "lifted", scene.lifted);
  write_raw(dir / "assoc.raw", scene.assoc);
  files["assoc"] = "assoc.raw";
  manifest["files"] = files;
  write_manifest(dir, manifest);
  return manifest;
}

json save_scene(const MpiScene& scene, const fs::path& dir) {
  scene.validate();
  ensure_dir(dir);
  json manifest = common_header("mpi", scene.channel_kind, scene.intrinsics, scene.channels(),
                                scene.num_planes());
  manifest["planes"] = planes_json(scene.planes);
  json files;
  files["alpha"] = write_stack(dir, "alpha", scene.alpha);
  files["content"] = write_stack(dir, "content", scene.content);
  manifest["files"] = files;
  write_manifest(dir, manifest);
  return manifest;
}

json save_scene(const AnyScene& scene, const fs::path& dir) {
  return std::visit([&](const auto& s) { return save_scene(s, dir); }, scene);
}

AnyScene load_scene(const fs::path& dir) {
  const fs::path manifest_path = dir / kManifestName;
  if (!fs::is_directory(dir)) throw IoError("scene directory not found: " + dir.string(), dir.string());
  std::ifstream in(manifest_path);
  if (!in) fail(manifest_path, "missing manifest");
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    fail(manifest_path, std::string("invalid JSON: ") + e.what());
  }

  try {
    if (!manifest.contains("format_version") || manifest.at("format_version") != kSceneFormatVersion) {
      fail(manifest_path, "unsupported format_version (expected " +
                              std::to_string(kSceneFormatVersion) + ")");
    }
    const std::string type = manifest.at("scene_type").get<std::string>();
    const ChannelKind kind = channel_kind_from_string(manifest.at("channel_kind").get<std::string>());
    const json& dims = manifest.at("dims");
    const auto w = static_cast<int>(dim(dims, "width", manifest_path));
    const auto h = static_cast<int>(dim(dims, "height", manifest_path));
    const auto c = static_cast<int>(dim(dims, "channels", manifest_path));
    const std::size_t m = dim(dims, "m", manifest_path);
    const CameraIntrinsics k = intrinsics_from_json(manifest.at("intrinsics"));
    if (k.width() != w || k.height() != h) fail(manifest_path, "intrinsics size differs from dims");

    std::vector<Plane> planes;
    if (manifest.contains("planes")) {
      for (const auto& p : manifest.at("planes")) planes.push_back(plane_from_json(p));
    } else if (manifest.contains("plane_set")) {
      const json& ps = manifest.at("plane_set");
      planes = plane_set(ps.at("near").get<double>(), ps.at("far").get<double>(),
                         ps.at("m").get<std::size_t>());
    } else {
      fail(manifest_path, "needs 'planes' or 'plane_set'");
    }
    if (planes.size() != m) fail(manifest_path, "plane count differs from dims.m");

    const json& files = manifest.at("files");
    std::vector<Raster> alpha = load_stack(dir, files, "alpha", m, w, h, 1);

    if (type == "hybrid") {
      const std::size_t kl = dim(dims, "k", manifest_path);
      std::vector<Raster> lifted = load_stack(dir, files, "lifted", kl, w, h, c);
      Raster assoc = load_checked(dir, files.at("assoc"), w, h, static_cast<int>(kl * m));
      HybridScene scene{std::move(lifted), std::move(alpha), std::move(assoc), std::move(planes), k,
                        kind};
      scene.validate();
      return scene;
    }
    if (type == "mpi") {
      std::vector<Raster> content = load_stack(dir, files, "content", m, w, h, c);
      MpiScene scene{std::move(planes), std::move(content), std::move(alpha), k, kind};
      scene.validate();
      return scene;
    }
    fail(manifest_path, "unknown scene_type '" + type + "'");
  } catch (const ValidationError& e) {
    fail(manifest_path, e.what());
  } catch (const json::exception& e) {
    fail(manifest_path, std::string("malformed manifest: ") + e.what());
  }
}

MpiScene as_mpi(const AnyScene& scene) {
  if (const auto* h = std::get_if<HybridScene>(&scene)) return expand_hybrid(*h);
  return std::get<MpiScene>(scene);
}

}  // namespace mpie
