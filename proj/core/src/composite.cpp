// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include <sstream>

#include "mpie/error.hpp"
#include "mpie/parallel.hpp"
#include "mpie/render.hpp"

namespace mpie {

namespace {

constexpr double kCoverageFloor = 1e-6;

void check_stack(std::span<const Raster> content, std::span<const Raster> alpha) {
  if (content.empty()) throw ValidationError("composite: empty plane list");
  if (content.size() != alpha.size()) {
    throw ValidationError("composite: content and alpha lists differ in length");
  }
  const Raster& first = content.front();
  for (std::size_t z = 0; z < content.size(); ++z) {
    if (!content[z].same_shape(first)) {
      std::ostringstream os;
      os << "composite: content " << z << " shape differs from content 0";
      throw ValidationError(os.str());
    }
    if (!alpha[z].same_size(first) || alpha[z].channels() != 1) {
      std::ostringstream os;
      os << "composite: alpha " << z << " must be " << first.width() << "x" << first.height()
         << "x1";
      throw ValidationError(os.str());
    }
  }
}

}  // namespace

CompositeOutput composite(std::span<const Raster> content, std::span<const Raster> alpha) {
  check_stack(content, alpha);
  const int w = content.front().width();
  const int h = content.front().height();
  const int c = content.front().channels();
  CompositeOutput out{Raster(w, h, c), Raster(w, h, 1)};

  parallel_rows(static_cast<std::size_t>(h), [&](std::size_t row) {
    const int y = static_cast<int>(row);
    std::vector<double> acc(static_cast<std::size_t>(c));
    for (int x = 0; x < w; ++x) {
      std::fill(acc.begin(), acc.end(), 0.0);
      double transmittance = 1.0;
      for (std::size_t z = 0; z < content.size(); ++z) {
        const double a = alpha[z].at(x, y);
        const double weight = a * transmittance;
        const auto src = content[z].pixel(x, y);
        for (int ch = 0; ch < c; ++ch) acc[static_cast<std::size_t>(ch)] += src[ch] * weight;
        transmittance *= 1.0 - a;
      }
      auto dst = out.image.pixel(x, y);
      for (int ch = 0; ch < c; ++ch) dst[ch] = static_cast<float>(acc[static_cast<std::size_t>(ch)]);
      out.transmittance.at(x, y) = static_cast<float>(transmittance);
    }
  });
  return out;
}

Raster normalize_by_coverage(const CompositeOutput& out) {
  Raster norm(out.image.width(), out.image.height(), out.image.channels());
  for (int y = 0; y < norm.height(); ++y) {
    for (int x = 0; x < norm.width(); ++x) {
      const double covered = 1.0 - static_cast<double>(out.transmittance.at(x, y));
      if (covered <= kCoverageFloor) continue;
      const auto src = out.image.pixel(x, y);
      auto dst = norm.pixel(x, y);
      for (int ch = 0; ch < norm.channels(); ++ch) {
        dst[ch] = static_cast<float>(src[ch] / covered);
      }
    }
  }
  return norm;
}

}  // namespace mpie
