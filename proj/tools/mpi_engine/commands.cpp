// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mpi_engine/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "mpi_engine/staging.hpp"
#include "mpie/depth.hpp"
#include "mpie/edit.hpp"
#include "mpie/error.hpp"
#include "mpie/geometry_json.hpp"
#include "mpie/metrics.hpp"
#include "mpie/raster_io.hpp"
#include "mpie/render.hpp"
#include "mpie/scene_io.hpp"
#include "mpie/synth.hpp"

namespace mpie::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string(), path.string());
  return json::parse(in);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw IoError("cannot write " + path.string(), path.string());
}

void emit_json(const json& j, const std::string& dest, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (dest == "-") {
    out << text;
    return;
  }
  Staging st;
  write_text(st.file(dest), text);
  st.commit();
}

AnyScene open_scene(const std::string& dir) {
  if (dir.empty() || !fs::is_directory(dir)) throw ValidationError("scene directory not found: " + dir);
  return load_scene(dir);
}

void require_raster_extension(const std::string& path, bool allow_png = true) {
  const std::string ext = fs::path(path).extension().string();
  if (ext == ".raw" || ext == ".pfm" || (allow_png && ext == ".png")) return;
  throw ValidationError("output '" + path + "' needs a .raw, .pfm" + (allow_png ? " or .png" : "") +
                        " extension");
}

// Catches channel counts a format cannot hold before any work is done.
void require_channels_fit(const std::string& path, int channels) {
  const std::string ext = fs::path(path).extension().string();
  const bool ok = ext == ".pfm"   ? (channels == 1 || channels == 3)
                  : ext == ".png" ? (channels == 1 || channels == 3 || channels == 4)
                                  : true;
  if (!ok) {
    throw ValidationError("cannot store " + std::to_string(channels) + " channels in " + ext +
                          "; use .raw");
  }
}

Pose resolve_pose(const PoseArgs& p) {
  const int given = !p.file.empty() + !p.inline_json.empty() + p.lateral.has_value() + p.forward.has_value();
  if (given > 1) throw ValidationError("give at most one of --pose, --pose-inline, --lateral, --forward");
  if (!p.file.empty()) return pose_from_json(read_json(p.file));
  if (!p.inline_json.empty()) return pose_from_json(json::parse(p.inline_json));
  if (p.lateral) return offset_camera(Vec3(*p.lateral, 0, 0));
  if (p.forward) return offset_camera(Vec3(0, 0, *p.forward));
  return Pose::identity();
}

BorderPolicy parse_border(const std::string& s) {
  if (s == "transparent") return BorderPolicy::Transparent;
  if (s == "clamp") return BorderPolicy::Clamp;
  throw ValidationError("unknown border policy '" + s + "'");
}

std::pair<double, double> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  double lo = 0, hi = 0;
  if (colon != std::string::npos) {
    const char* b = s.data();
    const auto r1 = std::from_chars(b, b + colon, lo);
    const auto r2 = std::from_chars(b + colon + 1, b + s.size(), hi);
    if (r1.ec == std::errc() && r1.ptr == b + colon && r2.ec == std::errc() && r2.ptr == b + s.size()) {
      return {lo, hi};
    }
  }
  throw ValidationError("--range must look like MIN:MAX, got '" + s + "'");
}

std::string numbered(const char* stem, std::size_t i, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%02zu%s", stem, i, ext);
  return buf;
}

json surface_json(const SnappedSurface& s) {
  return {{"label", s.label},
          {"plane_index", s.plane_index},
          {"depth", s.depth},
          {"rect", {s.rect.x, s.rect.y, s.rect.width, s.rect.height}}};
}

}  // namespace

void cmd_render(const RenderArgs& a) {
  require_raster_extension(a.out);
  const BorderPolicy border = parse_border(a.border);
  const Pose pose = resolve_pose(a.pose);
  const MpiScene scene = as_mpi(open_scene(a.scene));
  const CameraIntrinsics k_tgt =
      a.target_intrinsics.empty() ? scene.intrinsics : intrinsics_from_json(read_json(a.target_intrinsics));
  if (!a.labels.empty() && scene.channel_kind != ChannelKind::Semantics) {
    throw ValidationError("--labels needs a semantics scene");
  }
  require_channels_fit(a.out, scene.channels());

  spdlog::info("render: {} planes, {}x{} -> {}x{}", scene.num_planes(), scene.width(), scene.height(),
               k_tgt.width(), k_tgt.height());
  const CompositeOutput result = render_view(scene, k_tgt, pose, border);

  const fs::path out(a.out);
  const fs::path trans = out.parent_path() / (out.stem().string() + "_transmittance.pfm");
  Staging st;
  write_raster(st.file(out), a.normalized ? normalize_by_coverage(result) : result.image);
  write_pfm(st.file(trans), result.transmittance);
  if (!a.labels.empty()) write_label_png(st.file(a.labels), argmax_labels(result.image));
  st.commit();
}

void cmd_depth(const DepthArgs& a) {
  require_raster_extension(a.out);
  const MpiScene scene = as_mpi(open_scene(a.scene));
  const DepthMode mode = a.normalized ? DepthMode::Normalized : DepthMode::Raw;
  Raster map = a.inverse ? inverse_depth_from_alpha(scene.alpha, scene.planes, mode)
                         : depth_from_alpha(scene.alpha, scene.planes, mode);
  if (a.disparity) {
    const double fx = a.fx.value_or(scene.intrinsics.fx());
    map = depth_to_disparity(map, fx, a.baseline, a.inverse ? DepthInput::InverseDepth : DepthInput::Depth);
  }
  Staging st;
  write_raster(st.file(a.out), map);
  st.commit();
}

void cmd_expand(const ExpandArgs& a) {
  const AnyScene scene = open_scene(a.scene);
  if (std::holds_alternative<MpiScene>(scene)) spdlog::warn("expand: input is already a full MPI scene");
  Staging st;
  save_scene(as_mpi(scene), st.directory(a.out));
  st.commit();
}

void cmd_edit(const EditArgs& a) {
  const EditScript script = edit_script_from_json(read_json(a.script));
  const AnyScene scene = open_scene(a.scene);
  const auto* hybrid = std::get_if<HybridScene>(&scene);
  if (!hybrid) throw ValidationError("edit: scene must be hybrid (lifted layers)");
  spdlog::info("edit: {} ops", script.ops.size());
  const HybridScene edited = apply_edits(*hybrid, script);
  Staging st;
  save_scene(edited, st.directory(a.out));
  st.commit();
}

void cmd_metrics(const MetricsArgs& a, std::ostream& out) {
  json records = json::array();
  if (a.kind == "sem") {
    const LabelMap pred = read_label_png(a.pred);
    const LabelMap gt = read_label_png(a.gt);
    std::size_t l = 0;
    if (a.num_classes) {
      l = *a.num_classes;
    } else {
      for (const LabelMap* m : {&pred, &gt})
        for (std::int32_t v : m->data())
          if (v != a.ignore) l = std::max(l, static_cast<std::size_t>(v) + 1);
    }
    const ConfusionMatrix cm = confusion(pred, gt, l, a.ignore);
    const SegmentationScores s = class_accuracy_and_iou(cm);
    const json params = {{"num_classes", l},
                         {"ignore", a.ignore},
                         {"classes_present", s.classes_present},
                         {"class_accuracy", s.class_accuracy},
                         {"class_iou", s.class_iou}};
    records.push_back(metric_record("mean_class_accuracy", s.mean_class_accuracy, cm.total(), params));
    records.push_back(metric_record("mean_iou", s.mean_iou, cm.total(), params));
  } else if (a.kind == "depth") {
    const auto [lo, hi] = parse_range(a.range);
    const DepthMetrics d = depth_metrics(read_raster(a.pred), read_raster(a.gt), lo, hi);
    const json params = {{"z_min", lo}, {"z_max", hi}};
    records.push_back(metric_record("sc_inv", d.sc_inv, d.valid_pixels, params));
    records.push_back(metric_record("l1_rel", d.l1_rel, d.valid_pixels, params));
    records.push_back(metric_record("l1_inv", d.l1_inv, d.valid_pixels, params));
  } else if (a.kind == "photo") {
    const Raster pred = read_raster(a.pred);
    const Photometric p = photometric(pred, read_raster(a.gt));
    records.push_back(metric_record("l1", p.l1, pred.pixel_count()));
    records.push_back(metric_record("psnr", p.psnr, pred.pixel_count()));
  } else if (a.kind == "nll") {
    const Raster pred = read_raster(a.pred);
    const LabelMap gt = read_label_png(a.gt, a.ignore);
    std::size_t labelled = 0;
    for (std::int32_t v : gt.data()) labelled += v >= 0;
    records.push_back(metric_record("nll", semantic_nll(pred, gt), labelled, {{"ignore", a.ignore}}));
  } else {
    throw ValidationError("unknown metrics kind '" + a.kind + "'");
  }
  emit_json({{"kind", a.kind}, {"records", records}}, a.out, out);
}

void cmd_synth(const SynthArgs& a) {
  const SynthSpec spec = synth_spec_from_json(read_json(a.spec));
  const SynthResult r = synth_scene(spec);
  for (const std::string& w : r.warnings) spdlog::warn("synth: {}", w);

  Staging st;
  const fs::path dir = st.directory(a.out);
  save_scene(r.scene, dir);
  const fs::path gt_dir = dir / "gt";
  fs::create_directories(gt_dir);

  json layout = {{"intrinsics", to_json(r.layout.intrinsics)},
                 {"ground", surface_json(r.layout.ground)},
                 {"primitives", json::array()},
                 {"poses", json::array()},
                 {"warnings", r.warnings}};
  for (const SnappedSurface& s : r.layout.primitives) layout["primitives"].push_back(surface_json(s));
  for (std::size_t i = 0; i < r.ground_truth.size(); ++i) {
    const GroundTruth& g = r.ground_truth[i];
    layout["poses"].push_back(to_json(g.pose));
    write_pfm(gt_dir / numbered("depth", i, ".pfm"), g.depth);
    write_label_png(gt_dir / numbered("labels", i, ".png"), g.labels);
  }
  write_text(gt_dir / "layout.json", layout.dump(2) + "\n");
  st.commit();
}

void cmd_planes(const PlanesArgs& a, std::ostream& out) {
  json planes = json::array();
  for (const Plane& p : plane_set(a.near, a.far, a.m)) planes.push_back(to_json(p));
  emit_json(planes, a.out, out);
}

}  // namespace mpie::cli
