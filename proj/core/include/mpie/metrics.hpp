// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mpie/raster.hpp"

namespace mpie {

/// counts[gt][pred], row-major.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t num_classes);

  std::size_t num_classes() const { return n_; }
  std::uint64_t at(std::size_t gt, std::size_t pred) const { return counts_[gt * n_ + pred]; }
  std::uint64_t& at(std::size_t gt, std::size_t pred) { return counts_[gt * n_ + pred]; }
  std::uint64_t total() const;
  std::uint64_t row_sum(std::size_t gt) const;
  std::uint64_t col_sum(std::size_t pred) const;

  /// Element-wise sum; lets tiles be accumulated independently.
  ConfusionMatrix& operator+=(const ConfusionMatrix& o);
  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> counts_;
};

/// Throws ValidationError on size mismatch or a label outside [0, l) that is
/// not `ignore`; the message names the pixel.
ConfusionMatrix confusion(const LabelMap& pred, const LabelMap& gt, std::size_t num_classes,
                          std::optional<std::int32_t> ignore = std::nullopt);

/// Percentages in [0, 100]. Classes absent from the ground truth are left out
/// of the means and reported as NaN in the per-class vectors.
struct SegmentationScores {
  double mean_class_accuracy = 0;
  double mean_iou = 0;
  std::vector<double> class_accuracy;
  std::vector<double> class_iou;
  std::size_t classes_present = 0;
};

SegmentationScores class_accuracy_and_iou(const ConfusionMatrix& cm);

struct DepthMetrics {
  double sc_inv = 0;
  double l1_rel = 0;
  double l1_inv = 0;
  std::size_t valid_pixels = 0;
};

/// Evaluated over pixels whose ground truth lies in [z_min, z_max]:
///   sc_inv = sqrt(mean(e^2) - mean(e)^2), e = ln pred - ln gt
///   l1_rel = mean |pred - gt| / gt
///   l1_inv = mean |1/pred - 1/gt|
DepthMetrics depth_metrics(const Raster& pred, const Raster& gt, double z_min, double z_max);

struct Photometric {
  double l1 = 0;
  double psnr = 0;  ///< +inf when the images are identical

  bool psnr_is_infinite() const;
};

Photometric photometric(const Raster& pred, const Raster& gt);

/// Mean absolute difference of two same-shaped rasters.
double mean_abs_difference(const Raster& a, const Raster& b);

/// Mean over pixels of -ln(max(p[gt], eps)). Void (negative) gt labels are
/// skipped.
double semantic_nll(const Raster& pred_probs, const LabelMap& gt, double eps = 1e-8);

/// L1 between disparities fx * baseline / depth of two depth maps.
double depth_loss(const Raster& pred_depth, const Raster& gt_depth, double fx,
                  double baseline = 0.54);

struct LossWeights {
  double sem = 1.0;
  double dep = 0.1;
  double col = 1.0;
  double gan = 1.0;
};

struct LossTerms {
  double sem = 0;
  double dep = 0;
  double col = 0;
  std::optional<double> gan;
};

/// lambda_0 sem + lambda_1 dep + lambda_2 col + lambda_3 gan (gan = 0 when
/// absent). Throws ValidationError on non-finite terms or weights.
double aggregate_loss(const LossTerms& terms, const LossWeights& w = {});

/// {"metric": name, "value": v, "valid_pixels": n, "params": {...}}. Infinite
/// values are written as the string "inf".
nlohmann::json metric_record(const std::string& metric, double value, std::size_t valid_pixels,
                             nlohmann::json params = nlohmann::json::object());

}  // namespace mpie
