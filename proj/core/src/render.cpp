// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mpie/render.hpp"

#include <sstream>

#include "mpie/error.hpp"
#include "mpie/parallel.hpp"

namespace mpie {

CompositeOutput render_view(const MpiScene& scene, const CameraIntrinsics& k_tgt,
                            const Pose& theta, BorderPolicy border) {
  scene.validate();
  const std::size_t m = scene.num_planes();

  std::vector<Homography> forward;
  forward.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    try {
      forward.push_back(homography_ref_to_tgt(scene.planes[i], scene.intrinsics, k_tgt, theta));
    } catch (const GeometryError& e) {
      std::ostringstream os;
      os << "plane " << i << ": " << e.what();
      throw GeometryError(os.str(), i);
    }
  }

  std::vector<Raster> content;
  std::vector<Raster> alpha;
  content.reserve(m);
  alpha.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    content.push_back(warp(scene.content[i], forward[i], k_tgt.width(), k_tgt.height(), border));
    alpha.push_back(warp(scene.alpha[i], forward[i], k_tgt.width(), k_tgt.height(), border));
  }
  return composite(content, alpha);
}

LabelMap argmax_labels(const Raster& probabilities) {
  LabelMap labels(probabilities.width(), probabilities.height());
  parallel_rows(static_cast<std::size_t>(probabilities.height()), [&](std::size_t row) {
    const int y = static_cast<int>(row);
    for (int x = 0; x < probabilities.width(); ++x) {
      const auto p = probabilities.pixel(x, y);
      std::int32_t best = 0;
      for (int c = 1; c < probabilities.channels(); ++c) {
        if (p[c] > p[best]) best = c;
      }
      labels.at(x, y) = best;
    }
  });
  return labels;
}

SemanticRender render_semantics(const MpiScene& scene, const CameraIntrinsics& k_tgt,
                                const Pose& theta, BorderPolicy border) {
  if (scene.channel_kind != ChannelKind::Semantics) {
    throw ValidationError("render_semantics: scene content is not semantics");
  }
  CompositeOutput out = render_view(scene, k_tgt, theta, border);
  LabelMap labels = argmax_labels(out.image);
  return {std::move(labels), std::move(out.image), std::move(out.transmittance)};
}

}  // namespace mpie
