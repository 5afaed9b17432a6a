// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mpie/scene.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "mpie/error.hpp"
#include "mpie/parallel.hpp"

namespace mpie {

namespace {

constexpr double kDegenerateColumn = 1e-8;
constexpr double kSimplexTol = 1e-4;

void check_alpha_stack(const std::vector<Raster>& alpha, int w, int h, const char* who) {
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const Raster& a = alpha[i];
    if (a.width() != w || a.height() != h || a.channels() != 1) {
      std::ostringstream os;
      os << who << ": alpha " << i << " must be " << w << "x" << h << "x1";
      throw ValidationError(os.str());
    }
    for (float v : a.data()) {
      if (!(v >= 0.0f && v <= 1.0f)) {
        std::ostringstream os;
        os << who << ": alpha " << i << " has a value outside [0, 1]";
        throw ValidationError(os.str());
      }
    }
  }
}

void check_planes_increasing(const std::vector<Plane>& planes, const char* who) {
  for (std::size_t i = 1; i < planes.size(); ++i) {
    if (!(planes[i].distance() > planes[i - 1].distance())) {
      throw ValidationError(std::string(who) + ": plane distances must be strictly increasing");
    }
  }
}

}  // namespace

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::Color: return "color";
    case ChannelKind::Semantics: return "semantics";
    case ChannelKind::Features: return "features";
  }
  return "color";
}

ChannelKind channel_kind_from_string(std::string_view name) {
  if (name == "color") return ChannelKind::Color;
  if (name == "semantics") return ChannelKind::Semantics;
  if (name == "features") return ChannelKind::Features;
  throw ValidationError("unknown channel kind '" + std::string(name) + "'");
}

void MpiScene::validate() const {
  const std::size_t m = planes.size();
  if (m == 0) throw ValidationError("mpi scene: no planes");
  if (content.size() != m || alpha.size() != m) {
    throw ValidationError("mpi scene: planes, content and alpha lists differ in length");
  }
  check_planes_increasing(planes, "mpi scene");
  const int w = width();
  const int h = height();
  const int c = content.front().channels();
  for (std::size_t i = 0; i < m; ++i) {
    const Raster& r = content[i];
    if (r.width() != w || r.height() != h || r.channels() != c) {
      std::ostringstream os;
      os << "mpi scene: content " << i << " must be " << w << "x" << h << "x" << c;
      throw ValidationError(os.str());
    }
    if (!r.all_finite()) throw ValidationError("mpi scene: non-finite content");
  }
  check_alpha_stack(alpha, w, h, "mpi scene");

  if (channel_kind == ChannelKind::Semantics) {
    for (std::size_t i = 0; i < m; ++i) {
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          double sum = 0;
          for (float p : content[i].pixel(x, y)) {
            if (p < -kSimplexTol) throw ValidationError("mpi scene: negative probability");
            sum += p;
          }
          if (sum > 1.0 + kSimplexTol) {
            std::ostringstream os;
            os << "mpi scene: semantics at plane " << i << " pixel (" << x << "," << y
               << ") sum to " << sum;
            throw ValidationError(os.str());
          }
        }
      }
    }
  }
}

void HybridScene::validate() const {
  const std::size_t k = lifted.size();
  const std::size_t m = planes.size();
  if (k == 0) throw ValidationError("hybrid scene: no lifted layers");
  if (!(k < m)) throw ValidationError("hybrid scene: need fewer lifted layers than planes (k < m)");
  if (alpha.size() != m) throw ValidationError("hybrid scene: alpha count differs from plane count");
  check_planes_increasing(planes, "hybrid scene");
  const int w = width();
  const int h = height();
  const int c = lifted.front().channels();
  for (std::size_t j = 0; j < k; ++j) {
    const Raster& r = lifted[j];
    if (r.width() != w || r.height() != h || r.channels() != c) {
      std::ostringstream os;
      os << "hybrid scene: lifted " << j << " must be " << w << "x" << h << "x" << c;
      throw ValidationError(os.str());
    }
    if (!r.all_finite()) throw ValidationError("hybrid scene: non-finite lifted content");
  }
  check_alpha_stack(alpha, w, h, "hybrid scene");
  if (assoc.width() != w || assoc.height() != h ||
      static_cast<std::size_t>(assoc.channels()) != k * m) {
    std::ostringstream os;
    os << "hybrid scene: association must be " << w << "x" << h << "x" << k * m;
    throw ValidationError(os.str());
  }
  for (float v : assoc.data()) {
    if (!std::isfinite(v) || v < 0.0f) {
      throw ValidationError("hybrid scene: association entries must be finite and >= 0");
    }
  }
}

Raster normalize_association(const Raster& assoc, std::size_t k, std::size_t m) {
  if (k == 0 || m == 0 || static_cast<std::size_t>(assoc.channels()) != k * m) {
    throw ValidationError("association: channel count must equal k*m");
  }
  for (float v : assoc.data()) {
    if (!std::isfinite(v) || v < 0.0f) {
      throw ValidationError("association: entries must be finite and >= 0");
    }
  }
  Raster out(assoc.width(), assoc.height(), assoc.channels());
  const float uniform = static_cast<float>(1.0 / static_cast<double>(k));
  parallel_rows(static_cast<std::size_t>(assoc.height()), [&](std::size_t row) {
    const int y = static_cast<int>(row);
    for (int x = 0; x < assoc.width(); ++x) {
      const auto in = assoc.pixel(x, y);
      auto o = out.pixel(x, y);
      for (std::size_t i = 0; i < m; ++i) {
        double sum = 0;
        for (std::size_t j = 0; j < k; ++j) sum += in[j * m + i];
        if (sum <= kDegenerateColumn) {
          for (std::size_t j = 0; j < k; ++j) o[j * m + i] = uniform;
        } else {
          for (std::size_t j = 0; j < k; ++j) {
            o[j * m + i] = static_cast<float>(in[j * m + i] / sum);
          }
        }
      }
    }
  });
  return out;
}

MpiScene expand_hybrid(const HybridScene& scene) {
  scene.validate();
  const std::size_t k = scene.num_lifted();
  const std::size_t m = scene.num_planes();
  const int w = scene.width();
  const int h = scene.height();
  const int c = scene.channels();
  const Raster phi = normalize_association(scene.assoc, k, m);

  std::vector<Raster> content;
  content.reserve(m);
  for (std::size_t i = 0; i < m; ++i) content.emplace_back(w, h, c);

  parallel_rows(static_cast<std::size_t>(h), [&](std::size_t row) {
    const int y = static_cast<int>(row);
    std::vector<double> acc(static_cast<std::size_t>(c));
    for (int x = 0; x < w; ++x) {
      const auto weights = phi.pixel(x, y);
      for (std::size_t i = 0; i < m; ++i) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t j = 0; j < k; ++j) {
          const double wji = weights[j * m + i];
          if (wji == 0.0) continue;
          const auto src = scene.lifted[j].pixel(x, y);
          for (int ch = 0; ch < c; ++ch) acc[static_cast<std::size_t>(ch)] += src[ch] * wji;
        }
        auto dst = content[i].pixel(x, y);
        for (int ch = 0; ch < c; ++ch) dst[ch] = static_cast<float>(acc[static_cast<std::size_t>(ch)]);
      }
    }
  });

  MpiScene out{scene.planes, std::move(content), scene.alpha, scene.intrinsics, scene.channel_kind};
  return out;
}

}  // namespace mpie
