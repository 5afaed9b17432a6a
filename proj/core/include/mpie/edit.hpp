// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "mpie/raster.hpp"
#include "mpie/scene.hpp"

namespace mpie {

/// Axis-aligned pixel rectangle [x, x+width) x [y, y+height).
struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  bool contains(int px, int py) const {
    return px >= x && px < x + width && py >= y && py < y + height;
  }
};

/// Non-zero entries of a W x H LabelMap mark the region.
struct Mask {
  LabelMap mask;
};

/// Whole layer.
struct FullImage {};

using Region = std::variant<FullImage, Rect, Mask>;

struct SetLabel {
  std::int32_t label;
};
struct Erase {
  std::int32_t fill_label;
};
/// Writes the stamp's labels with its top-left corner at (anchor_x,
/// anchor_y). Negative stamp labels are skipped.
struct PasteStamp {
  LabelMap stamp;
  int anchor_x = 0;
  int anchor_y = 0;
};

using EditAction = std::variant<SetLabel, Erase, PasteStamp>;

struct EditOp {
  std::size_t layer = 0;
  Region region = FullImage{};
  EditAction action;
};

struct EditScript {
  std::vector<EditOp> ops;
};

/// Applies the ops in order to the lifted semantic layers. Every written pixel
/// becomes a one-hot distribution; alpha, association and untouched pixels
/// keep their exact values. The whole script is validated first, so an
/// invalid op leaves nothing half-applied (ValidationError).
HybridScene apply_edits(const HybridScene& scene, const EditScript& script);

/// Script JSON:
///   {"ops": [{"layer": 0,
///             "region": {"rect": [x, y, w, h]} | {"mask": [[..row..], ..]},
///             "action": "set_label", "label": 3}
///            | {..., "action": "erase", "fill": 0}
///            | {..., "action": "paste", "stamp": [[..row..], ..], "anchor": [x, y]}]}
/// "region" may be omitted (whole layer).
EditScript edit_script_from_json(const nlohmann::json& j);

}  // namespace mpie
