// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "mpie/geometry.hpp"
#include "mpie/raster.hpp"
#include "mpie/render.hpp"
#include "mpie/scene.hpp"

namespace {

using namespace mpie;

Raster noise(int w, int h, int c, std::mt19937& rng) {
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  Raster r(w, h, c);
  for (float& v : r.data()) v = u(rng);
  return r;
}

HybridScene make_hybrid(int w, int h, std::size_t k, std::size_t m, int l) {
  std::mt19937 rng(7);
  HybridScene s{{}, {}, Raster(), plane_set(1.0, 100.0, m), CameraIntrinsics::centered(w * 1.2, w, h),
                ChannelKind::Features};
  for (std::size_t j = 0; j < k; ++j) s.lifted.push_back(noise(w, h, l, rng));
  for (std::size_t i = 0; i < m; ++i) s.alpha.push_back(noise(w, h, 1, rng));
  s.assoc = normalize_association(noise(w, h, static_cast<int>(k * m), rng), k, m);
  return s;
}

void BM_Warp(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  std::mt19937 rng(1);
  const Raster img = noise(side, side, 3, rng);
  const auto k = CameraIntrinsics::centered(side, side, side);
  const Homography h = homography_ref_to_tgt(Plane::fronto_parallel(4.0), k, k, offset_camera(Vec3(0.3, 0.1, 0.2)));
  for (auto _ : state) benchmark::DoNotOptimize(warp(img, h, side, side));
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_Warp)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Composite(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(2);
  std::vector<Raster> content, alpha;
  for (std::size_t i = 0; i < m; ++i) {
    content.push_back(noise(256, 256, 3, rng));
    alpha.push_back(noise(256, 256, 1, rng));
  }
  for (auto _ : state) benchmark::DoNotOptimize(composite(content, alpha));
  state.SetItemsProcessed(state.iterations() * 256 * 256 * static_cast<std::int64_t>(m));
}
BENCHMARK(BM_Composite)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Expand(benchmark::State& state) {
  const HybridScene s = make_hybrid(256, 192, 4, static_cast<std::size_t>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(expand_hybrid(s));
}
BENCHMARK(BM_Expand)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_RenderView(benchmark::State& state) {
  const MpiScene s = expand_hybrid(make_hybrid(256, 192, 4, 32, 3));
  const Pose pose = offset_camera(Vec3(0.54, 0, 0));
  for (auto _ : state) benchmark::DoNotOptimize(render_view(s, s.intrinsics, pose));
}
BENCHMARK(BM_RenderView)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
