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

#pragma once

#include <cstddef>
#include <vector>

#include "vqe/measures.hpp"
#include "vqe/sampling.hpp"
#include "vqe/types.hpp"

namespace vqe {

/// 1 - pred . label after normalizing both inputs. Throws kArgument for a
/// zero-norm input.
double cosine_loss(const Vec3& pred, const Vec3& label);

/// Views whose normalized quality is at least alpha, in ascending index order.
struct LabelSet {
  double alpha = 0.99;
  std::vector<std::size_t> indices;
  std::vector<Vec3> vectors;

  std::size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
};

LabelSet build_label_set(const VQMap& map, const ViewSphere& sphere, double alpha = 0.99);

struct LabelChoice {
  double loss = 0.0;
  std::size_t index = 0;  ///< view index of the chosen label
};

/// Closest label: min over the set of cosine losses, ties to the lowest
/// view index. Throws kContract for an empty set.
LabelChoice ml_loss(const Vec3& pred, const LabelSet& labels);

enum class GaussianKernel {
  kLinearDistance,   ///< exp(-d / (2 sigma^2))
  kSquaredDistance,  ///< exp(-d^2 / (2 sigma^2))
};

struct GaussianParams {
  double sigma = 2.0;
  double s = 1.0;
  GaussianKernel kernel = GaussianKernel::kLinearDistance;
};

/// p_g(v, pred) = VQ*(v) * (kernel(|v - pred|) + s), d the chord distance.
double gaussian_weight(double quality, const Vec3& view, const Vec3& pred,
                       const GaussianParams& params);

struct GaussianTarget {
  std::size_t index = 0;
  std::vector<double> weighted;  ///< p_g for every view
};

/// Argmax of p_g over all views of the map, ties to the lowest index.
GaussianTarget gl_target(const Vec3& pred, const VQMap& map, const ViewSphere& sphere,
                         const GaussianParams& params = {});

/// cosine_loss(pred, sphere[gl_target(...).index]).
double gl_loss(const Vec3& pred, const VQMap& map, const ViewSphere& sphere,
               const GaussianParams& params = {});

}  // namespace vqe
