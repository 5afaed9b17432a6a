// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace mpie::cli {

/// Exactly one of the pose sources may be set; none means identity.
struct PoseArgs {
  std::string file;
  std::string inline_json;
  std::optional<double> lateral;
  std::optional<double> forward;
};

struct RenderArgs {
  std::string scene;
  PoseArgs pose;
  std::string target_intrinsics;
  std::string out;
  std::string labels;
  bool normalized = false;
  std::string border = "transparent";
};

struct DepthArgs {
  std::string scene;
  bool inverse = false;
  bool normalized = false;
  bool disparity = false;
  std::optional<double> fx;
  double baseline = 0.54;
  std::string out;
};

struct ExpandArgs {
  std::string scene;
  std::string out;
};

struct EditArgs {
  std::string scene;
  std::string script;
  std::string out;
};

struct MetricsArgs {
  std::string pred;
  std::string gt;
  std::string kind;
  std::string range = "1:100";
  std::optional<std::size_t> num_classes;
  std::int32_t ignore = 255;
  std::string out = "-";
};

struct SynthArgs {
  std::string spec;
  std::string out;
};

struct PlanesArgs {
  double near = 1.0;
  double far = 100.0;
  std::size_t m = 32;
  std::string out = "-";
};

void cmd_render(const RenderArgs& a);
void cmd_depth(const DepthArgs& a);
void cmd_expand(const ExpandArgs& a);
void cmd_edit(const EditArgs& a);
void cmd_metrics(const MetricsArgs& a, std::ostream& out);
void cmd_synth(const SynthArgs& a);
void cmd_planes(const PlanesArgs& a, std::ostream& out);

}  // namespace mpie::cli
