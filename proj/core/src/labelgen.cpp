// Copyright 2026 The VQE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vqe/labelgen.hpp"

#include <cmath>

#include "vqe/errors.hpp"

namespace vqe {
namespace {

Vec3 unit(const Vec3& v, const char* what) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::kArgument, std::string(what) + " has zero or non-finite norm");
  }
  return v / n;
}

void check_map(const VQMap& map, const ViewSphere& sphere) {
  if (map.size() != sphere.size() || map.normalized.size() != sphere.size()) {
    throw Error(ErrorKind::kArgument, "quality map and view sphere sizes differ");
  }
}

}  // namespace

double cosine_loss(const Vec3& pred, const Vec3& label) {
  return 1.0 - unit(pred, "prediction").dot(unit(label, "label"));
}

LabelSet build_label_set(const VQMap& map, const ViewSphere& sphere, double alpha) {
  check_map(map, sphere);
  LabelSet set;
  set.alpha = alpha;
  for (std::size_t v = 0; v < map.size(); ++v) {
    if (map.normalized[v] >= alpha) {
      set.indices.push_back(v);
      set.vectors.push_back(sphere[v]);
    }
  }
  return set;
}

LabelChoice ml_loss(const Vec3& pred, const LabelSet& labels) {
  if (labels.empty()) throw Error(ErrorKind::kContract, "label set is empty");
  const Vec3 p = unit(pred, "prediction");
  LabelChoice best{1.0 - p.dot(labels.vectors[0].normalized()), labels.indices[0]};
  for (std::size_t i = 1; i < labels.size(); ++i) {
    const double loss = 1.0 - p.dot(labels.vectors[i].normalized());
    if (loss < best.loss) best = {loss, labels.indices[i]};
  }
  return best;
}

double gaussian_weight(double quality, const Vec3& view, const Vec3& pred,
                       const GaussianParams& params) {
  const double d = (view - pred).norm();
  const double x = params.kernel == GaussianKernel::kLinearDistance ? d : d * d;
  return quality * (std::exp(-x / (2.0 * params.sigma * params.sigma)) + params.s);
}

GaussianTarget gl_target(const Vec3& pred, const VQMap& map, const ViewSphere& sphere,
                         const GaussianParams& params) {
  check_map(map, sphere);
  const Vec3 p = unit(pred, "prediction");
  GaussianTarget target;
  target.weighted.resize(sphere.size());
  for (std::size_t v = 0; v < sphere.size(); ++v) {
    target.weighted[v] = gaussian_weight(map.normalized[v], sphere[v], p, params);
    if (target.weighted[v] > target.weighted[target.index]) target.index = v;
  }
  return target;
}

double gl_loss(const Vec3& pred, const VQMap& map, const ViewSphere& sphere,
               const GaussianParams& params) {
  return cosine_loss(pred, sphere[gl_target(pred, map, sphere, params).index]);
}

}  // namespace vqe
