// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mpi_engine/cli.hpp"

#include <algorithm>
#include <functional>
#include <memory>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "mpi_engine/commands.hpp"
#include "mpie/error.hpp"
#include "mpie/parallel.hpp"

namespace mpie::cli {

namespace {

void add_pose_options(CLI::App* cmd, PoseArgs& p) {
  auto* file = cmd->add_option("--pose", p.file, "pose JSON file {rotation, translation}");
  auto* inl = cmd->add_option("--pose-inline", p.inline_json, "pose as an inline JSON string");
  auto* lat = cmd->add_option("--lateral", p.lateral, "camera offset along x in metres");
  auto* fwd = cmd->add_option("--forward", p.forward, "camera offset along z in metres");
  file->excludes(inl, lat, fwd);
  inl->excludes(lat, fwd);
  lat->excludes(fwd);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-plane image scene engine"};
  app.name("mpi_engine");
  app.require_subcommand(1);
  app.fallthrough();

  unsigned threads = 0;
  std::string log_level = "warn";
  app.add_option("--threads", threads, "worker threads (0 = hardware concurrency)")
      ->envname("MPI_ENGINE_THREADS");
  app.add_option("--log-level", log_level, "trace|debug|info|warn|error|off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  std::function<void()> action;

  RenderArgs render;
  auto* r = app.add_subcommand("render", "render a scene from a target camera");
  r->add_option("--scene", render.scene, "scene directory")->required();
  add_pose_options(r, render.pose);
  r->add_option("--target-intrinsics", render.target_intrinsics, "intrinsics JSON for the target camera");
  r->add_option("--out", render.out, "output image (.pfm, .png or .raw)")->required();
  r->add_option("--labels", render.labels, "also write argmax labels to this PNG (semantics scenes)");
  r->add_flag("--normalized", render.normalized, "divide by the covered fraction 1 - T");
  r->add_option("--border", render.border, "transparent|clamp")
      ->check(CLI::IsMember({"transparent", "clamp"}));
  r->callback([&] { action = [&] { cmd_render(render); }; });

  DepthArgs depth;
  auto* d = app.add_subcommand("depth", "depth, inverse depth or disparity from the alpha stack");
  d->add_option("--scene", depth.scene, "scene directory")->required();
  d->add_flag("--inverse", depth.inverse, "composite 1/d instead of d");
  d->add_flag("--normalized", depth.normalized, "divide by the covered fraction");
  d->add_flag("--disparity", depth.disparity, "convert to fx * baseline / depth");
  d->add_option("--fx", depth.fx, "focal length in pixels (default: scene intrinsics)");
  d->add_option("--baseline", depth.baseline, "stereo baseline in metres")->capture_default_str();
  d->add_option("--out", depth.out, "output map (.pfm, .png or .raw)")->required();
  d->callback([&] { action = [&] { cmd_depth(depth); }; });

  ExpandArgs expand;
  auto* e = app.add_subcommand("expand", "materialise a hybrid scene as a full MPI");
  e->add_option("--scene", expand.scene, "scene directory")->required();
  e->add_option("--out", expand.out, "output scene directory")->required();
  e->callback([&] { action = [&] { cmd_expand(expand); }; });

  EditArgs edit;
  auto* ed = app.add_subcommand("edit", "apply an edit script to the lifted semantic layers");
  ed->add_option("--scene", edit.scene, "scene directory")->required();
  ed->add_option("--script", edit.script, "edit script JSON")->required();
  ed->add_option("--out", edit.out, "output scene directory")->required();
  ed->callback([&] { action = [&] { cmd_edit(edit); }; });

  MetricsArgs metrics;
  auto* m = app.add_subcommand("metrics", "evaluate a prediction against ground truth");
  m->add_option("--pred", metrics.pred, "prediction (label PNG or float raster)")->required();
  m->add_option("--gt", metrics.gt, "ground truth (label PNG or float raster)")->required();
  m->add_option("--kind", metrics.kind, "sem|depth|photo|nll")
      ->required()
      ->check(CLI::IsMember({"sem", "depth", "photo", "nll"}));
  m->add_option("--range", metrics.range, "depth window MIN:MAX")->capture_default_str();
  m->add_option("--num-classes", metrics.num_classes, "label count (default: largest label + 1)");
  m->add_option("--ignore", metrics.ignore, "label value excluded from evaluation")->capture_default_str();
  m->add_option("--out", metrics.out, "JSON file, or - for stdout")->capture_default_str();
  m->callback([&] { action = [&] { cmd_metrics(metrics, out); }; });

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "generate a synthetic scene with analytic ground truth");
  s->add_option("--spec", synth.spec, "scene spec JSON")->required();
  s->add_option("--out", synth.out, "output scene directory")->required();
  s->callback([&] { action = [&] { cmd_synth(synth); }; });

  PlanesArgs planes;
  auto* p = app.add_subcommand("planes", "plane distances linear in inverse depth");
  p->add_option("--near", planes.near, "nearest distance")->capture_default_str();
  p->add_option("--far", planes.far, "farthest distance")->capture_default_str();
  p->add_option("--m", planes.m, "plane count")->capture_default_str();
  p->add_option("--out", planes.out, "JSON file, or - for stdout")->capture_default_str();
  p->callback([&] { action = [&] { cmd_planes(planes, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? kOk : kValidation;
  }

  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("mpi_engine", sink);
  logger->set_pattern("[%l] %v");
  logger->set_level(spdlog::level::from_str(log_level));
  spdlog::set_default_logger(logger);

  set_thread_count(threads);
  int code = kOk;
  try {
    action();
  } catch (const ValidationError& ex) {
    err << "error: " << ex.what() << "\n";
    code = kValidation;
  } catch (const GeometryError& ex) {
    err << "error: " << ex.what() << "\n";
    code = kGeometry;
  } catch (const IoError& ex) {
    err << "error: " << ex.what() << "\n";
    code = kIo;
  } catch (const nlohmann::json::exception& ex) {
    err << "error: bad JSON: " << ex.what() << "\n";
    code = kValidation;
  } catch (const std::exception& ex) {
    err << "internal error: " << ex.what() << "\n";
    code = kInternal;
  }
  spdlog::set_default_logger(std::make_shared<spdlog::logger>("mpi_engine_null"));
  set_thread_count(0);
  return code;
}

}  // namespace mpie::cli
