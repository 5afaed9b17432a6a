// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mpie/metrics.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "mpie/depth.hpp"
#include "mpie/error.hpp"

namespace mpie {

ConfusionMatrix::ConfusionMatrix(std::size_t num_classes)
    : n_(num_classes), counts_(num_classes * num_classes, 0) {
  if (num_classes == 0) throw ValidationError("confusion: need at least one class");
}

std::uint64_t ConfusionMatrix::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t gt) const {
  std::uint64_t s = 0;
  for (std::size_t p = 0; p < n_; ++p) s += at(gt, p);
  return s;
}

std::uint64_t ConfusionMatrix::col_sum(std::size_t pred) const {
  std::uint64_t s = 0;
  for (std::size_t g = 0; g < n_; ++g) s += at(g, pred);
  return s;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& o) {
  if (o.n_ != n_) throw ValidationError("confusion: class counts differ");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += o.counts_[i];
  return *this;
}

ConfusionMatrix confusion(const LabelMap& pred, const LabelMap& gt, std::size_t num_classes,
                          std::optional<std::int32_t> ignore) {
  if (pred.width() != gt.width() || pred.height() != gt.height()) {
    throw ValidationError("confusion: prediction and ground truth sizes differ");
  }
  ConfusionMatrix cm(num_classes);
  const auto n = static_cast<std::int64_t>(num_classes);
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      const std::int32_t g = gt.at(x, y);
      const std::int32_t p = pred.at(x, y);
      if (ignore && (g == *ignore || p == *ignore)) continue;
      if (g < 0 || g >= n || p < 0 || p >= n) {
        std::ostringstream os;
        os << "confusion: label out of range at pixel (" << x << "," << y << "): gt " << g
           << ", pred " << p << ", classes " << num_classes;
        throw ValidationError(os.str());
      }
      ++cm.at(static_cast<std::size_t>(g), static_cast<std::size_t>(p));
    }
  }
  return cm;
}

SegmentationScores class_accuracy_and_iou(const ConfusionMatrix& cm) {
  const std::size_t n = cm.num_classes();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  SegmentationScores s;
  s.class_accuracy.assign(n, nan);
  s.class_iou.assign(n, nan);
  double acc_sum = 0;
  double iou_sum = 0;
  for (std::size_t c = 0; c < n; ++c) {
    const std::uint64_t row = cm.row_sum(c);
    if (row == 0) continue;
    const auto diag = static_cast<double>(cm.at(c, c));
    const auto uni = static_cast<double>(row + cm.col_sum(c) - cm.at(c, c));
    s.class_accuracy[c] = 100.0 * diag / static_cast<double>(row);
    s.class_iou[c] = 100.0 * diag / uni;
    acc_sum += s.class_accuracy[c];
    iou_sum += s.class_iou[c];
    ++s.classes_present;
  }
  if (s.classes_present == 0) {
    throw ValidationError("segmentation scores: no class present in the ground truth");
  }
  s.mean_class_accuracy = acc_sum / static_cast<double>(s.classes_present);
  s.mean_iou = iou_sum / static_cast<double>(s.classes_present);
  return s;
}

DepthMetrics depth_metrics(const Raster& pred, const Raster& gt, double z_min, double z_max) {
  if (!pred.same_shape(gt) || gt.channels() != 1) {
    throw ValidationError("depth metrics: expected two 1-channel rasters of equal size");
  }
  if (!(z_min > 0) || !(z_min <= z_max)) {
    throw ValidationError("depth metrics: range must satisfy 0 < z_min <= z_max");
  }
  std::vector<double> log_err;
  double rel = 0;
  double inv = 0;
  auto p = pred.data();
  auto g = gt.data();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double gv = g[i];
    if (!(gv >= z_min && gv <= z_max)) continue;
    const double pv = p[i];
    if (!(pv > 0) || !std::isfinite(pv)) {
      std::ostringstream os;
      os << "depth metrics: non-positive predicted depth at index " << i;
      throw ValidationError(os.str());
    }
    log_err.push_back(std::log(pv) - std::log(gv));
    rel += std::abs(pv - gv) / gv;
    inv += std::abs(1.0 / pv - 1.0 / gv);
  }
  if (log_err.empty()) throw ValidationError("depth metrics: no pixel inside the depth range");

  const auto n = static_cast<double>(log_err.size());
  const double mean = std::accumulate(log_err.begin(), log_err.end(), 0.0) / n;
  // mean(e^2) - mean(e)^2, evaluated as the centred second moment.
  double var = 0;
  for (double e : log_err) var += (e - mean) * (e - mean);
  var /= n;

  DepthMetrics out;
  out.sc_inv = std::sqrt(std::max(0.0, var));
  out.l1_rel = rel / n;
  out.l1_inv = inv / n;
  out.valid_pixels = log_err.size();
  return out;
}

bool Photometric::psnr_is_infinite() const { return std::isinf(psnr) && psnr > 0; }

double mean_abs_difference(const Raster& a, const Raster& b) {
  if (!a.same_shape(b)) throw ValidationError("photometric: raster shapes differ");
  double sum = 0;
  auto pa = a.data();
  auto pb = b.data();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    sum += std::abs(static_cast<double>(pa[i]) - static_cast<double>(pb[i]));
  }
  return sum / static_cast<double>(pa.size());
}

Photometric photometric(const Raster& pred, const Raster& gt) {
  if (!pred.same_shape(gt)) throw ValidationError("photometric: raster shapes differ");
  double abs_sum = 0;
  double sq_sum = 0;
  auto p = pred.data();
  auto g = gt.data();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = static_cast<double>(p[i]) - static_cast<double>(g[i]);
    abs_sum += std::abs(d);
    sq_sum += d * d;
  }
  const auto n = static_cast<double>(p.size());
  const double mse = sq_sum / n;
  Photometric out;
  out.l1 = abs_sum / n;
  out.psnr = mse == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(1.0 / mse);
  return out;
}

double semantic_nll(const Raster& pred_probs, const LabelMap& gt, double eps) {
  if (pred_probs.width() != gt.width() || pred_probs.height() != gt.height()) {
    throw ValidationError("semantic nll: sizes differ");
  }
  double sum = 0;
  std::size_t count = 0;
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      const std::int32_t label = gt.at(x, y);
      if (label < 0) continue;
      if (label >= pred_probs.channels()) {
        std::ostringstream os;
        os << "semantic nll: label " << label << " out of range at pixel (" << x << "," << y << ")";
        throw ValidationError(os.str());
      }
      const double p = pred_probs.at(x, y, label);
      sum += -std::log(std::max(p, eps));
      ++count;
    }
  }
  if (count == 0) throw ValidationError("semantic nll: no labelled pixel");
  return sum / static_cast<double>(count);
}

double depth_loss(const Raster& pred_depth, const Raster& gt_depth, double fx, double baseline) {
  return mean_abs_difference(depth_to_disparity(pred_depth, fx, baseline),
                             depth_to_disparity(gt_depth, fx, baseline));
}

double aggregate_loss(const LossTerms& terms, const LossWeights& w) {
  const double gan = terms.gan.value_or(0.0);
  for (double v : {terms.sem, terms.dep, terms.col, gan, w.sem, w.dep, w.col, w.gan}) {
    if (!std::isfinite(v)) throw ValidationError("aggregate loss: non-finite term or weight");
  }
  return w.sem * terms.sem + w.dep * terms.dep + w.col * terms.col + w.gan * gan;
}

nlohmann::json metric_record(const std::string& metric, double value, std::size_t valid_pixels,
                             nlohmann::json params) {
  nlohmann::json v;
  if (std::isinf(value)) {
    v = value > 0 ? "inf" : "-inf";
  } else if (std::isnan(value)) {
    v = nullptr;
  } else {
    v = value;
  }
  return {{"metric", metric}, {"value", v}, {"valid_pixels", valid_pixels}, {"params", std::move(params)}};
}

}  // namespace mpie
