// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mpie/error.hpp"
#include "mpie/metrics.hpp"
#include "support/oracles.hpp"

using namespace mpie;
using mpie::testing::Rng;
using mpie::testing::uniform;

namespace {

Raster column(std::vector<float> v) {
  const int n = static_cast<int>(v.size());
  return Raster(n, 1, 1, std::move(v));
}

}  // namespace

TEST_CASE("confusion", "[metrics]") {
  SECTION("perfect prediction is diagonal") {
    const LabelMap gt(3, 2, std::vector<std::int32_t>{0, 1, 2, 2, 1, 0});
    const ConfusionMatrix cm = confusion(gt, gt, 3);
    CHECK(cm.total() == 6);
    for (std::size_t i = 0; i < 3; ++i) CHECK(cm.at(i, i) == 2);
  }
  SECTION("2x2 image with one mismatch") {
    const LabelMap gt(2, 2, std::vector<std::int32_t>{0, 0, 1, 1});
    const LabelMap pred(2, 2, std::vector<std::int32_t>{0, 1, 1, 1});
    const ConfusionMatrix cm = confusion(pred, gt, 2);
    CHECK(cm.at(0, 0) == 1);
    CHECK(cm.at(0, 1) == 1);
    CHECK(cm.at(1, 0) == 0);
    CHECK(cm.at(1, 1) == 2);
    const SegmentationScores s = class_accuracy_and_iou(cm);
    // acc = (1/2, 2/2), iou = (1/2, 2/3)
    CHECK(s.class_accuracy[0] == Catch::Approx(50.0));
    CHECK(s.class_accuracy[1] == Catch::Approx(100.0));
    CHECK(s.mean_class_accuracy == Catch::Approx(75.0));
    CHECK(s.class_iou[1] == Catch::Approx(200.0 / 3.0));
    CHECK(s.mean_iou == Catch::Approx((50.0 + 200.0 / 3.0) / 2));
  }
  SECTION("ignored pixels are skipped") {
    const LabelMap gt(2, 1, std::vector<std::int32_t>{255, 255});
    const LabelMap pred(2, 1, std::vector<std::int32_t>{0, 1});
    CHECK(confusion(pred, gt, 2, 255).total() == 0);
  }
  SECTION("out-of-range labels name the pixel") {
    const LabelMap gt(2, 1, std::vector<std::int32_t>{0, 1});
    const LabelMap pred(2, 1, std::vector<std::int32_t>{0, 7});
    try {
      confusion(pred, gt, 2);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("(1,0)"));
    }
  }
  SECTION("tiles merge by addition and totals are conserved") {
    Rng rng(3);
    std::vector<std::int32_t> a(40), b(40);
    for (auto& v : a) v = static_cast<std::int32_t>(uniform(rng, 0, 4));
    for (auto& v : b) v = static_cast<std::int32_t>(uniform(rng, 0, 4));
    const LabelMap pa(8, 5, a), pb(8, 5, b);
    const ConfusionMatrix whole = confusion(pa, pb, 4);
    CHECK(whole.total() == 40);
    ConfusionMatrix merged(4);
    for (int half = 0; half < 2; ++half) {
      std::vector<std::int32_t> ta(a.begin() + half * 20, a.begin() + half * 20 + 20);
      std::vector<std::int32_t> tb(b.begin() + half * 20, b.begin() + half * 20 + 20);
      merged += confusion(LabelMap(4, 5, ta), LabelMap(4, 5, tb), 4);
    }
    CHECK(merged == whole);
  }
}

TEST_CASE("class accuracy and IoU", "[metrics]") {
  SECTION("perfect prediction is exactly 100") {
    const LabelMap gt(4, 1, std::vector<std::int32_t>{0, 1, 2, 1});
    const SegmentationScores s = class_accuracy_and_iou(confusion(gt, gt, 5));
    CHECK(s.mean_class_accuracy == 100.0);
    CHECK(s.mean_iou == 100.0);
    CHECK(s.classes_present == 3);
    CHECK(std::isnan(s.class_accuracy[4]));
  }
  SECTION("single-class predictor on a balanced two-class image") {
    const LabelMap gt(4, 1, std::vector<std::int32_t>{0, 0, 1, 1});
    const LabelMap pred(4, 1, 0);
    const SegmentationScores s = class_accuracy_and_iou(confusion(pred, gt, 2));
    CHECK(s.mean_class_accuracy == Catch::Approx(50.0));
    CHECK(s.class_iou[0] == Catch::Approx(50.0));
    CHECK(s.class_iou[1] == 0.0);
    CHECK(s.mean_iou == Catch::Approx(25.0));
  }
  SECTION("nothing present") {
    CHECK_THROWS_AS(class_accuracy_and_iou(ConfusionMatrix(3)), ValidationError);
  }
}

TEST_CASE("depth_metrics", "[metrics]") {
  SECTION("perfect prediction is exactly zero") {
    const Raster gt = column({1.5f, 3, 20});
    const DepthMetrics d = depth_metrics(gt, gt, 1, 100);
    CHECK(d.sc_inv == 0.0);
    CHECK(d.l1_rel == 0.0);
    CHECK(d.l1_inv == 0.0);
    CHECK(d.valid_pixels == 3);
  }
  SECTION("pred = 2 gt") {
    const Raster gt = column({1, 2, 4, 8});
    const Raster pred = column({2, 4, 8, 16});
    const DepthMetrics d = depth_metrics(pred, gt, 1, 100);
    CHECK(d.sc_inv == Catch::Approx(0.0).margin(1e-12));
    CHECK(d.l1_rel == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(d.l1_inv == Catch::Approx((0.5 + 0.25 + 0.125 + 0.0625) / 4).epsilon(1e-12));
  }
  SECTION("three-pixel hand case") {
    // e = (0, -ln 2, 0): mean e = -ln2/3, mean e^2 = ln2^2/3
    const DepthMetrics d = depth_metrics(column({1, 1, 4}), column({1, 2, 4}), 1, 100);
    const double ln2 = std::log(2.0);
    CHECK(d.sc_inv == Catch::Approx(std::sqrt(ln2 * ln2 / 3 - ln2 * ln2 / 9)).epsilon(1e-12));
    CHECK(d.l1_rel == Catch::Approx(0.5 / 3).epsilon(1e-12));
    CHECK(d.l1_inv == Catch::Approx(0.5 / 3).epsilon(1e-12));
  }
  SECTION("scale invariance") {
    Rng rng(13);
    const Raster gt = testing::random_raster(rng, 16, 16, 1, 1, 90);
    const Raster pred = testing::random_raster(rng, 16, 16, 1, 1, 90);
    for (float c : {2.0f, 0.5f, 7.0f}) {
      Raster scaled = pred;
      for (float& v : scaled.data()) v *= c;
      CHECK(std::abs(depth_metrics(scaled, gt, 1, 100).sc_inv - depth_metrics(pred, gt, 1, 100).sc_inv) < 1e-9);
    }
  }
  SECTION("depth windows") {
    const Raster gt = column({0.5f, 50, 150, 500, 1500});
    const Raster pred = column({-1, 50, 150, 500, 1500});  // pixel 0 lies outside every window
    CHECK(depth_metrics(pred, gt, 1, 100).valid_pixels == 1);
    CHECK(depth_metrics(pred, gt, 1, 200).valid_pixels == 2);
    CHECK(depth_metrics(pred, gt, 1, 1000).valid_pixels == 3);
    CHECK_THROWS_AS(depth_metrics(pred, gt, 2000, 3000), ValidationError);
    const Raster bad = column({1, 0, 1, 1, 1});
    CHECK_THROWS_AS(depth_metrics(bad, gt, 1, 100), ValidationError);
  }
}

TEST_CASE("photometric", "[metrics]") {
  SECTION("identical images") {
    const Raster a(3, 3, 3, 0.4f);
    const Photometric p = photometric(a, a);
    CHECK(p.l1 == 0.0);
    CHECK(p.psnr_is_infinite());
  }
  SECTION("constant offset of 0.1") {
    const Raster gt(4, 4, 3, 0.25f);
    const Raster pred(4, 4, 3, 0.35f);
    const Photometric p = photometric(pred, gt);
    CHECK(p.l1 == Catch::Approx(0.1).epsilon(1e-6));
    CHECK(p.psnr == Catch::Approx(20.0).epsilon(1e-5));
  }
  SECTION("random pair against the scalar oracle") {
    Rng rng(19);
    const Raster a = testing::random_raster(rng, 2, 2, 1);
    const Raster b = testing::random_raster(rng, 2, 2, 1);
    double l1 = 0, mse = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      const double diff = double(a.data()[i]) - b.data()[i];
      l1 += std::abs(diff) / 4;
      mse += diff * diff / 4;
    }
    const Photometric p = photometric(a, b);
    CHECK(p.l1 == Catch::Approx(l1).epsilon(1e-12));
    CHECK(p.psnr == Catch::Approx(10 * std::log10(1 / mse)).epsilon(1e-12));
  }
  SECTION("shape mismatch") {
    CHECK_THROWS_AS(photometric(Raster(2, 2, 1), Raster(2, 2, 3)), ValidationError);
  }
}

TEST_CASE("semantic_nll", "[metrics]") {
  const LabelMap gt(2, 1, std::vector<std::int32_t>{0, 3});
  SECTION("one-hot correct") {
    Raster p(2, 1, 4);
    p.at(0, 0, 0) = 1;
    p.at(1, 0, 3) = 1;
    CHECK(semantic_nll(p, gt) == Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("uniform over four labels") {
    CHECK(semantic_nll(Raster(2, 1, 4, 0.25f), gt) == Catch::Approx(std::log(4.0)).epsilon(1e-7));
  }
  SECTION("zero probability is clamped") {
    const double v = semantic_nll(Raster(2, 1, 4, 0.0f), gt);
    CHECK(std::isfinite(v));
    CHECK(v == Catch::Approx(-std::log(1e-8)).epsilon(1e-12));
  }
  SECTION("label out of range") {
    CHECK_THROWS_AS(semantic_nll(Raster(2, 1, 3, 0.3f), gt), ValidationError);
  }
}

TEST_CASE("depth_loss and aggregate_loss", "[metrics]") {
  SECTION("depth loss compares scaled inverse depth") {
    const Raster gt = column({2, 10});
    const Raster pred = column({4, 10});
    // |100*0.54/4 - 100*0.54/2| / 2
    CHECK(depth_loss(pred, gt, 100) == Catch::Approx(27.0 / 4).epsilon(1e-6));
  }
  SECTION("weighted sum") {
    CHECK(aggregate_loss({0, 0, 0, std::nullopt}) == 0.0);
    CHECK(aggregate_loss({1, 1, 1, std::nullopt}) == 2.1);
    CHECK(aggregate_loss({1, 1, 1, 1.0}) == Catch::Approx(3.1));
    CHECK(aggregate_loss({3, 4, 5, 6.0}, {0, 0, 1, 0}) == 5.0);
    CHECK_THROWS_AS(aggregate_loss({NAN, 0, 0, std::nullopt}), ValidationError);
  }
  SECTION("metric records") {
    const auto rec = metric_record("psnr", INFINITY, 12, {{"kind", "photo"}});
    CHECK(rec.at("value") == "inf");
    CHECK(rec.at("valid_pixels") == 12);
    CHECK(metric_record("l1", 0.5, 1).at("value") == 0.5);
  }
}
