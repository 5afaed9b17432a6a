// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mpie/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "mpie/error.hpp"
#include "mpie/geometry_json.hpp"
#include "mpie/parallel.hpp"

namespace mpie {

using nlohmann::json;

namespace {

std::size_t nearest_plane(const std::vector<Plane>& planes, double depth) {
  std::size_t best = 0;
  double best_err = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const double err = std::abs(planes[i].distance() - depth);
    if (err < best_err) {
      best_err = err;
      best = i;
    }
  }
  return best;
}

// Raw engine output reduced with integer arithmetic only, so a seed gives the
// same layout on every platform.
std::uint32_t below(std::mt19937& gen, std::uint32_t n) { return n == 0 ? 0 : gen() % n; }

bool clip_to_image(Rect& r, int w, int h) {
  const int x0 = std::max(r.x, 0);
  const int y0 = std::max(r.y, 0);
  const int x1 = std::min(r.x + r.width, w);
  const int y1 = std::min(r.y + r.height, h);
  if (x1 <= x0 || y1 <= y0) return false;
  r = Rect{x0, y0, x1 - x0, y1 - y0};
  return true;
}

void validate_spec(const SynthSpec& spec) {
  if (spec.width < 1 || spec.height < 1) throw ValidationError("synth: image size must be >= 1");
  if (spec.num_lifted < 1 || spec.num_lifted >= spec.num_planes) {
    throw ValidationError("synth: need 1 <= k < m");
  }
  if (spec.num_labels < 1 || spec.num_labels > 255) {
    throw ValidationError("synth: num_labels must be in [1, 255]");
  }
  const auto l = static_cast<std::int32_t>(spec.num_labels);
  auto in_range = [&](double d) { return d >= spec.d_near && d <= spec.d_far; };
  if (spec.ground_label < 0 || spec.ground_label >= l) throw ValidationError("synth: ground label out of range");
  if (!in_range(spec.ground_depth)) throw ValidationError("synth: ground depth outside the plane range");
  for (std::size_t i = 0; i < spec.primitives.size(); ++i) {
    const SynthPrimitive& p = spec.primitives[i];
    std::ostringstream who;
    who << "synth: primitive " << i;
    if (p.label < 0 || p.label >= l) throw ValidationError(who.str() + " label out of range");
    if (!in_range(p.depth)) throw ValidationError(who.str() + " depth outside the plane range");
    if (p.rect.width <= 0 || p.rect.height <= 0) throw ValidationError(who.str() + " has an empty rect");
  }
}

}  // namespace

SynthResult synth_scene(const SynthSpec& spec) {
  validate_spec(spec);
  const int w = spec.width;
  const int h = spec.height;
  const std::size_t m = spec.num_planes;
  const std::size_t k = spec.num_lifted;
  const int l = static_cast<int>(spec.num_labels);

  SynthResult result{
      HybridScene{{}, {}, Raster(), {}, CameraIntrinsics::centered(spec.focal, w, h),
                  ChannelKind::Semantics},
      SynthLayout{CameraIntrinsics::centered(spec.focal, w, h), plane_set(spec.d_near, spec.d_far, m),
                  SnappedSurface{}, {}},
      {},
      {}};
  SynthLayout& layout = result.layout;
  const std::size_t ground_plane = nearest_plane(layout.planes, spec.ground_depth);
  layout.ground = SnappedSurface{spec.ground_label, ground_plane,
                                 layout.planes[ground_plane].distance(), Rect{0, 0, w, h}};

  std::vector<SynthPrimitive> prims = spec.primitives;
  if (spec.random_primitives > 0) {
    std::mt19937 gen(spec.seed);
    for (std::size_t n = 0; n < spec.random_primitives; ++n) {
      SynthPrimitive p;
      p.kind = below(gen, 2) == 0 ? "box" : "pole";
      p.label = static_cast<std::int32_t>(below(gen, static_cast<std::uint32_t>(l)));
      const std::uint32_t nearer = static_cast<std::uint32_t>(ground_plane);
      p.depth = layout.planes[below(gen, std::max<std::uint32_t>(nearer, 1))].distance();
      const int max_w = std::max(1, p.kind == "pole" ? w / 10 : w / 4);
      const int max_h = std::max(1, p.kind == "pole" ? (3 * h) / 4 : h / 3);
      p.rect.width = 1 + static_cast<int>(below(gen, static_cast<std::uint32_t>(max_w)));
      p.rect.height = 1 + static_cast<int>(below(gen, static_cast<std::uint32_t>(max_h)));
      p.rect.x = static_cast<int>(below(gen, static_cast<std::uint32_t>(w - p.rect.width + 1)));
      p.rect.y = static_cast<int>(below(gen, static_cast<std::uint32_t>(h - p.rect.height + 1)));
      prims.push_back(p);
    }
  }

  for (std::size_t i = 0; i < prims.size(); ++i) {
    SnappedSurface s{prims[i].label, nearest_plane(layout.planes, prims[i].depth), 0.0, prims[i].rect};
    s.depth = layout.planes[s.plane_index].distance();
    std::ostringstream who;
    who << "primitive " << i << " (" << prims[i].kind << ")";
    if (!clip_to_image(s.rect, w, h)) {
      result.warnings.push_back(who.str() + " lies outside the reference frustum; dropped");
      continue;
    }
    if (s.plane_index > ground_plane) {
      result.warnings.push_back(who.str() + " lies behind the ground plane; dropped");
      continue;
    }
    layout.primitives.push_back(s);
  }
  std::stable_sort(layout.primitives.begin(), layout.primitives.end(),
                   [](const SnappedSurface& a, const SnappedSurface& b) {
                     return a.plane_index < b.plane_index;
                   });

  HybridScene& scene = result.scene;
  scene.planes = layout.planes;
  for (std::size_t j = 0; j < k; ++j) scene.lifted.emplace_back(w, h, l);
  for (std::size_t i = 0; i < m; ++i) scene.alpha.emplace_back(w, h, 1);
  scene.assoc = Raster(w, h, static_cast<int>(k * m));

  parallel_rows(static_cast<std::size_t>(h), [&](std::size_t row) {
    const int y = static_cast<int>(row);
    std::vector<const SnappedSurface*> stack;
    std::vector<bool> used(m);
    for (int x = 0; x < w; ++x) {
      stack.clear();
      std::fill(used.begin(), used.end(), false);
      for (const SnappedSurface& s : layout.primitives) {
        if (stack.size() + 1 >= k) break;
        if (!s.rect.contains(x, y) || used[s.plane_index]) continue;
        used[s.plane_index] = true;
        stack.push_back(&s);
      }
      if (!used[ground_plane]) stack.push_back(&layout.ground);

      for (std::size_t layer = 0; layer < k; ++layer) {
        const SnappedSurface* s = stack[std::min(layer, stack.size() - 1)];
        scene.lifted[layer].at(x, y, s->label) = 1.0f;
      }
      for (std::size_t layer = 0; layer < stack.size(); ++layer) {
        const std::size_t plane = stack[layer]->plane_index;
        scene.alpha[plane].at(x, y) = 1.0f;
        scene.assoc.at(x, y, static_cast<int>(layer * m + plane)) = 1.0f;
      }
    }
  });

  for (const Pose& pose : spec.poses) {
    result.ground_truth.push_back(analytic_ground_truth(layout, layout.intrinsics, pose));
  }
  return result;
}

GroundTruth analytic_ground_truth(const SynthLayout& layout, const CameraIntrinsics& k_tgt,
                                  const Pose& pose) {
  const int w = k_tgt.width();
  const int h = k_tgt.height();
  GroundTruth gt{pose, Raster(w, h, 1), LabelMap(w, h, -1)};
  const Mat3 rt = pose.rotation().transpose();
  const Vec3 origin = -(rt * pose.translation());
  const Mat3 k_inv = k_tgt.inverse_matrix();
  const CameraIntrinsics& k_ref = layout.intrinsics;

  auto hit = [&](const SnappedSurface& s, const Vec3& dir, double& depth) {
    if (std::abs(dir.z()) < 1e-15) return false;
    const double t = (s.depth - origin.z()) / dir.z();
    if (!(t > 1e-9)) return false;
    const Vec3 p = origin + t * dir;
    const double u = k_ref.fx() * p.x() / s.depth + k_ref.cx();
    const double v = k_ref.fy() * p.y() / s.depth + k_ref.cy();
    const bool inside = u >= s.rect.x - 0.5 && u < s.rect.x + s.rect.width - 0.5 &&
                        v >= s.rect.y - 0.5 && v < s.rect.y + s.rect.height - 0.5;
    if (inside) depth = t;
    return inside;
  };

  parallel_rows(static_cast<std::size_t>(h), [&](std::size_t row) {
    const int y = static_cast<int>(row);
    for (int x = 0; x < w; ++x) {
      // The target ray has unit z in its own frame, so the hit parameter is
      // the target-camera depth.
      const Vec3 dir = rt * (k_inv * Vec3(x, y, 1.0));
      double best = std::numeric_limits<double>::infinity();
      std::int32_t label = -1;
      double depth = 0;
      for (const SnappedSurface& s : layout.primitives) {
        if (hit(s, dir, depth) && depth < best) {
          best = depth;
          label = s.label;
        }
      }
      if (hit(layout.ground, dir, depth) && depth < best) {
        best = depth;
        label = layout.ground.label;
      }
      gt.labels.at(x, y) = label;
      gt.depth.at(x, y) = label < 0 ? 0.0f : static_cast<float>(best);
    }
  });
  return gt;
}

LabelMap boundary_band(const LabelMap& labels) {
  LabelMap band(labels.width(), labels.height(), 0);
  for (int y = 0; y < labels.height(); ++y) {
    for (int x = 0; x < labels.width(); ++x) {
      const std::int32_t c = labels.at(x, y);
      bool edge = false;
      for (int dy = -1; dy <= 1 && !edge; ++dy) {
        for (int dx = -1; dx <= 1 && !edge; ++dx) {
          const int nx = x + dx;
          const int ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= labels.width() || ny >= labels.height()) continue;
          edge = labels.at(nx, ny) != c;
        }
      }
      band.at(x, y) = edge ? 1 : 0;
    }
  }
  return band;
}

namespace {

double get_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ValidationError(std::string("synth spec: '") + key + "' must be a number");
  return j.at(key).get<double>();
}

template <class Int>
Int get_uint(const json& j, const char* key, Int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_unsigned()) {
    throw ValidationError(std::string("synth spec: '") + key + "' must be a non-negative integer");
  }
  return j.at(key).get<Int>();
}

}  // namespace

SynthSpec synth_spec_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("synth spec: expected a JSON object");
  SynthSpec s;
  s.seed = get_uint<std::uint32_t>(j, "seed", s.seed);
  s.width = static_cast<int>(get_uint<std::uint32_t>(j, "width", static_cast<std::uint32_t>(s.width)));
  s.height = static_cast<int>(get_uint<std::uint32_t>(j, "height", static_cast<std::uint32_t>(s.height)));
  s.focal = get_number(j, "focal", s.focal);
  if (j.contains("planes")) {
    const json& p = j.at("planes");
    s.d_near = get_number(p, "near", s.d_near);
    s.d_far = get_number(p, "far", s.d_far);
    s.num_planes = get_uint<std::size_t>(p, "m", s.num_planes);
  }
  s.num_lifted = get_uint<std::size_t>(j, "k", s.num_lifted);
  s.num_labels = get_uint<std::size_t>(j, "num_labels", s.num_labels);
  if (j.contains("ground")) {
    const json& g = j.at("ground");
    s.ground_depth = get_number(g, "depth", s.ground_depth);
    s.ground_label = static_cast<std::int32_t>(get_uint<std::uint32_t>(g, "label", 0));
  }
  if (j.contains("primitives")) {
    for (const auto& pj : j.at("primitives")) {
      SynthPrimitive p;
      if (pj.contains("kind")) p.kind = pj.at("kind").get<std::string>();
      p.label = static_cast<std::int32_t>(get_uint<std::uint32_t>(pj, "label", 0));
      p.depth = get_number(pj, "depth", p.depth);
      const json& r = pj.at("rect");
      if (!r.is_array() || r.size() != 4) throw ValidationError("synth spec: rect is [x, y, w, h]");
      p.rect = Rect{r[0].get<int>(), r[1].get<int>(), r[2].get<int>(), r[3].get<int>()};
      s.primitives.push_back(p);
    }
  }
  s.random_primitives = get_uint<std::size_t>(j, "random_primitives", 0);
  if (j.contains("poses")) {
    for (const auto& pj : j.at("poses")) s.poses.push_back(pose_from_json(pj));
  }
  if (j.contains("lateral")) {
    for (const auto& x : j.at("lateral")) s.poses.push_back(offset_camera(Vec3(x.get<double>(), 0, 0)));
  }
  if (j.contains("forward")) {
    for (const auto& z : j.at("forward")) s.poses.push_back(offset_camera(Vec3(0, 0, z.get<double>())));
  }
  return s;
}

}  // namespace mpie
