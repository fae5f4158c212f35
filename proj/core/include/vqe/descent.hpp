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
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "vqe/labelgen.hpp"
#include "vqe/measures.hpp"
#include "vqe/sampling.hpp"

namespace vqe {

enum class Stage { kSL, kML, kGL };
enum class Strategy { kSL, kML, kGL, kMLGL };

std::string_view to_string(Stage stage);
std::string_view to_string(Strategy strategy);

struct PredictionState {
  Vec3 v_hat = Vec3::UnitZ();
  Stage stage = Stage::kML;
  std::size_t step = 0;
  double loss = 0.0;            ///< loss of the active stage at v_hat
  std::size_t label = 0;        ///< view index of the active label
  std::size_t nearest = 0;      ///< sphere view nearest to v_hat
  double nearest_quality = 0.0; ///< VQ* of that view
};

struct DescentConfig {
  std::size_t total_steps = 400;
  std::size_t switch_step = 200;  ///< ML -> GL switch for kMLGL
  double learning_rate = 0.05;
  double alpha = 0.99;
  GaussianParams gaussian;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::kMLGL;
  /// Fixed SL labels. Empty means the best view of the map. Several labels
  /// model one input seen with conflicting targets: the step follows the
  /// mean of their gradients and the loss is their mean cosine loss.
  std::vector<std::size_t> sl_labels;
  unsigned threads = 0;  ///< used by compare_strategies
};

struct Trajectory {
  std::vector<PredictionState> states;  ///< steps 0..total_steps

  const PredictionState& final_state() const { return states.back(); }
  /// First step after which the nearest view no longer changes.
  std::size_t convergence_step() const;
};

/// |g - (g . v) v|: the tangential part of the cosine-loss gradient toward
/// `label` at `v_hat`.
double tangent_gradient_norm(const Vec3& v_hat, const Vec3& label);

/// Gradient descent of the strategy's loss on the unit sphere. At each step
/// the active label is held fixed, the gradient -label is projected onto the
/// tangent plane and v_hat <- normalize(v_hat + lr * tangent).
Trajectory descend(const VQMap& map, const ViewSphere& sphere, const DescentConfig& config,
                   const Vec3& init);

/// peak * exp(-(geodesic / width)^2) around a center direction.
struct ClusterSpec {
  Vec3 center = Vec3::UnitZ();
  double width = 0.3;  ///< radians
  double peak = 1.0;   ///< in (0, 1]
};

/// raw(v) = max over clusters; normalized with kMaxIsBest. Throws kArgument
/// for an empty list or an invalid cluster.
VQMap synth_map(std::span<const ClusterSpec> clusters, const ViewSphere& sphere);

/// A synthetic map plus the conflicting fixed labels used for SL runs.
struct Scenario {
  std::vector<ClusterSpec> clusters;
  std::vector<std::size_t> conflicting_labels;
};

/// One cluster of width 0.6 around the view nearest (0.3, -0.2, 0.9).
Scenario unimodal_scenario(const ViewSphere& sphere);

/// Two broad equal clusters A and B 90 degrees apart, centered on sphere
/// views, plus a narrow 0.96 decoy at the antipode of their midpoint. The
/// conflicting SL labels are the views at A and B.
Scenario bimodal_scenario(const ViewSphere& sphere);

/// n unit vectors, z uniform in [-1, 1] and azimuth uniform, from one seed.
std::vector<Vec3> random_unit_vectors(std::size_t n, std::uint64_t seed);

struct StrategyResult {
  Strategy strategy = Strategy::kSL;
  std::vector<double> final_quality;
  std::vector<std::size_t> convergence_steps;
  double mean_final_quality = 0.0;
  double mean_convergence_step = 0.0;
};

struct StrategyReport {
  std::size_t n_inits = 0;
  std::vector<StrategyResult> results;  ///< SL, ML, GL, ML+GL; empty for 0 inits
  /// Mean geodesic distance between v_hat at the ML -> GL switch and the GL
  /// target chosen there.
  double mean_boundary_distance = 0.0;

  const StrategyResult& result(Strategy strategy) const;
};

/// Runs all four strategies from the same inits (random_unit_vectors with
/// config.seed). Inits run in parallel; each trajectory is sequential.
StrategyReport compare_strategies(const VQMap& map, const ViewSphere& sphere,
                                  const DescentConfig& config, std::size_t n_inits);

/// Columns: step,x,y,z,stage,loss,nearest_vq.
void write_trajectory_csv(const Trajectory& trajectory, const std::filesystem::path& path);

}  // namespace vqe
