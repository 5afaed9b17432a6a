// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mpie/geometry.hpp"
#include "mpie/scene.hpp"
#include "mpie/synth.hpp"
#include "support/oracles.hpp"

namespace mpie::testing {

/// Random simplex-valued lifted layers, alpha in [0, 1], association with
/// some all-zero columns.
inline HybridScene random_hybrid(Rng& rng, int w, int h, std::size_t k, std::size_t m, int l,
                                 ChannelKind kind = ChannelKind::Semantics) {
  HybridScene s{{}, {}, Raster(), plane_set(1.0, 50.0, m), CameraIntrinsics::centered(w * 1.5, w, h),
                kind};
  for (std::size_t j = 0; j < k; ++j) {
    Raster r = random_raster(rng, w, h, l);
    if (kind == ChannelKind::Semantics) {
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          double sum = 0;
          for (float v : r.pixel(x, y)) sum += v;
          for (float& v : r.pixel(x, y)) v = static_cast<float>(v / sum);
        }
    }
    s.lifted.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < m; ++i) s.alpha.push_back(random_raster(rng, w, h, 1));
  s.assoc = random_raster(rng, w, h, static_cast<int>(k * m), 0, 2);
  for (float& v : s.assoc.data())
    if (uniform(rng, 0, 1) < 0.2) v = 0.0f;
  return s;
}

inline MpiScene random_mpi(Rng& rng, int w, int h, std::size_t m, int c) {
  MpiScene s{m == 1 ? std::vector<Plane>{Plane::fronto_parallel(3.0)} : plane_set(1.0, 50.0, m),
             {}, {}, CameraIntrinsics::centered(w * 1.5, w, h), ChannelKind::Color};
  for (std::size_t i = 0; i < m; ++i) {
    s.content.push_back(random_raster(rng, w, h, c));
    s.alpha.push_back(random_raster(rng, w, h, 1));
  }
  return s;
}

/// Ground at 50 m (label 0), a box at 8 m (label 1) and a thin pole at 5 m
/// (label 2) in front of it.
inline SynthSpec street_spec() {
  SynthSpec spec;
  spec.width = 64;
  spec.height = 48;
  spec.num_labels = 4;
  spec.primitives = {{"box", 1, 8.0, Rect{10, 14, 24, 20}}, {"pole", 2, 5.0, Rect{40, 6, 3, 36}}};
  return spec;
}

}  // namespace mpie::testing
