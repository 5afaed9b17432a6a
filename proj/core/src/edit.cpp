// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mpie/edit.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "mpie/error.hpp"

namespace mpie {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void reject(std::size_t op, const std::string& why) {
  std::ostringstream os;
  os << "edit op " << op << ": " << why;
  throw ValidationError(os.str());
}

void check_label(std::size_t op, std::int32_t label, int num_labels) {
  if (label < 0 || label >= num_labels) {
    reject(op, "label " + std::to_string(label) + " outside [0, " + std::to_string(num_labels) + ")");
  }
}

void validate_op(std::size_t index, const EditOp& op, const HybridScene& scene) {
  const int w = scene.width();
  const int h = scene.height();
  const int l = scene.channels();
  if (op.layer >= scene.num_lifted()) {
    reject(index, "layer " + std::to_string(op.layer) + " outside [0, " +
                      std::to_string(scene.num_lifted()) + ")");
  }
  std::visit(overloaded{
                 [](const FullImage&) {},
                 [&](const Rect& r) {
                   if (r.width <= 0 || r.height <= 0 || r.x < 0 || r.y < 0 ||
                       r.x + r.width > w || r.y + r.height > h) {
                     reject(index, "rectangle outside the image");
                   }
                 },
                 [&](const Mask& m) {
                   if (m.mask.width() != w || m.mask.height() != h) {
                     reject(index, "mask size differs from the scene");
                   }
                 },
             },
             op.region);
  std::visit(overloaded{
                 [&](const SetLabel& a) { check_label(index, a.label, l); },
                 [&](const Erase& a) { check_label(index, a.fill_label, l); },
                 [&](const PasteStamp& a) {
                   if (a.stamp.pixel_count() == 0) reject(index, "empty stamp");
                   if (a.anchor_x < 0 || a.anchor_y < 0 ||
                       a.anchor_x + a.stamp.width() > w || a.anchor_y + a.stamp.height() > h) {
                     reject(index, "stamp does not fit inside the image at its anchor");
                   }
                   for (std::int32_t v : a.stamp.data()) {
                     if (v >= 0) check_label(index, v, l);
                   }
                 },
             },
             op.action);
}

bool in_region(const Region& region, int x, int y) {
  return std::visit(overloaded{
                        [](const FullImage&) { return true; },
                        [&](const Rect& r) { return r.contains(x, y); },
                        [&](const Mask& m) { return m.mask.at(x, y) != 0; },
                    },
                    region);
}

void write_one_hot(Raster& layer, int x, int y, std::int32_t label) {
  auto p = layer.pixel(x, y);
  std::fill(p.begin(), p.end(), 0.0f);
  p[static_cast<std::size_t>(label)] = 1.0f;
}

}  // namespace

HybridScene apply_edits(const HybridScene& scene, const EditScript& script) {
  if (scene.channel_kind != ChannelKind::Semantics) {
    throw ValidationError("edit: scene content is not semantics");
  }
  scene.validate();
  for (std::size_t i = 0; i < script.ops.size(); ++i) validate_op(i, script.ops[i], scene);

  HybridScene out = scene;
  for (const EditOp& op : script.ops) {
    Raster& layer = out.lifted[op.layer];
    std::visit(overloaded{
                   [&](const SetLabel& a) {
                     for (int y = 0; y < layer.height(); ++y)
                       for (int x = 0; x < layer.width(); ++x)
                         if (in_region(op.region, x, y)) write_one_hot(layer, x, y, a.label);
                   },
                   [&](const Erase& a) {
                     for (int y = 0; y < layer.height(); ++y)
                       for (int x = 0; x < layer.width(); ++x)
                         if (in_region(op.region, x, y)) write_one_hot(layer, x, y, a.fill_label);
                   },
                   [&](const PasteStamp& a) {
                     for (int sy = 0; sy < a.stamp.height(); ++sy) {
                       for (int sx = 0; sx < a.stamp.width(); ++sx) {
                         const std::int32_t label = a.stamp.at(sx, sy);
                         const int x = a.anchor_x + sx;
                         const int y = a.anchor_y + sy;
                         if (label < 0 || !in_region(op.region, x, y)) continue;
                         write_one_hot(layer, x, y, label);
                       }
                     }
                   },
               },
               op.action);
  }
  return out;
}

namespace {

LabelMap label_grid(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array() || rows[0].empty()) {
    throw ValidationError(std::string("edit script: '") + what + "' must be a non-empty 2-D array");
  }
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(rows[0].size());
  std::vector<std::int32_t> labels;
  labels.reserve(static_cast<std::size_t>(w) * h);
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != w) {
      throw ValidationError(std::string("edit script: '") + what + "' rows differ in length");
    }
    for (const auto& v : row) {
      if (!v.is_number_integer()) {
        throw ValidationError(std::string("edit script: '") + what + "' entries must be integers");
      }
      labels.push_back(v.get<std::int32_t>());
    }
  }
  return LabelMap(w, h, std::move(labels));
}

std::int32_t int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw ValidationError(std::string("edit script: expected integer '") + key + "'");
  }
  return j.at(key).get<std::int32_t>();
}

}  // namespace

EditScript edit_script_from_json(const json& j) {
  if (!j.is_object() || !j.contains("ops") || !j.at("ops").is_array()) {
    throw ValidationError("edit script: expected {\"ops\": [...]}");
  }
  EditScript script;
  for (const auto& o : j.at("ops")) {
    if (!o.is_object()) throw ValidationError("edit script: each op must be an object");
    EditOp op;
    const std::int32_t layer = int_field(o, "layer");
    if (layer < 0) throw ValidationError("edit script: negative layer");
    op.layer = static_cast<std::size_t>(layer);

    if (o.contains("region")) {
      const json& r = o.at("region");
      if (r.contains("rect")) {
        const json& a = r.at("rect");
        if (!a.is_array() || a.size() != 4) throw ValidationError("edit script: rect is [x, y, w, h]");
        op.region = Rect{a[0].get<int>(), a[1].get<int>(), a[2].get<int>(), a[3].get<int>()};
      } else if (r.contains("mask")) {
        op.region = Mask{label_grid(r.at("mask"), "mask")};
      } else {
        throw ValidationError("edit script: region needs 'rect' or 'mask'");
      }
    }

    if (!o.contains("action") || !o.at("action").is_string()) {
      throw ValidationError("edit script: op needs an 'action'");
    }
    const std::string action = o.at("action").get<std::string>();
    if (action == "set_label") {
      op.action = SetLabel{int_field(o, "label")};
    } else if (action == "erase") {
      op.action = Erase{int_field(o, "fill")};
    } else if (action == "paste") {
      PasteStamp paste{label_grid(o.at("stamp"), "stamp")};
      if (o.contains("anchor")) {
        const json& a = o.at("anchor");
        if (!a.is_array() || a.size() != 2) throw ValidationError("edit script: anchor is [x, y]");
        paste.anchor_x = a[0].get<int>();
        paste.anchor_y = a[1].get<int>();
      }
      op.action = std::move(paste);
    } else {
      throw ValidationError("edit script: unknown action '" + action + "'");
    }
    script.ops.push_back(std::move(op));
  }
  return script;
}

}  // namespace mpie
