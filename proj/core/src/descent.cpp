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

#include "vqe/descent.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

#include "vqe/errors.hpp"
#include "vqe/parallel.hpp"

namespace vqe {
namespace {

struct ActiveLabel {
  Vec3 direction;
  double loss;
  std::size_t index;
};

std::vector<std::size_t> resolve_sl_labels(const VQMap& map, const DescentConfig& config) {
  if (config.sl_labels.empty()) return {map.best_index};
  for (const auto v : config.sl_labels) {
    if (v >= map.size()) throw Error(ErrorKind::kIndex, "SL label outside the view sphere");
  }
  return config.sl_labels;
}

Stage stage_at(Strategy strategy, std::size_t step, std::size_t switch_step) {
  switch (strategy) {
    case Strategy::kSL: return Stage::kSL;
    case Strategy::kML: return Stage::kML;
    case Strategy::kGL: return Stage::kGL;
    case Strategy::kMLGL: return step < switch_step ? Stage::kML : Stage::kGL;
  }
  return Stage::kML;
}

double geodesic(const Vec3& a, const Vec3& b) {
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

}  // namespace

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::kSL: return "SL";
    case Stage::kML: return "ML";
    case Stage::kGL: return "GL";
  }
  return "?";
}

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kSL: return "SL";
    case Strategy::kML: return "ML";
    case Strategy::kGL: return "GL";
    case Strategy::kMLGL: return "ML+GL";
  }
  return "?";
}

std::size_t Trajectory::convergence_step() const {
  if (states.empty()) return 0;
  const std::size_t last = states.back().nearest;
  std::size_t step = states.size() - 1;
  while (step > 0 && states[step - 1].nearest == last) --step;
  return states[step].step;
}

double tangent_gradient_norm(const Vec3& v_hat, const Vec3& label) {
  return (label - label.dot(v_hat) * v_hat).norm();
}

Trajectory descend(const VQMap& map, const ViewSphere& sphere, const DescentConfig& config,
                   const Vec3& init) {
  if (map.size() != sphere.size()) {
    throw Error(ErrorKind::kArgument, "quality map and view sphere sizes differ");
  }
  if (config.switch_step > config.total_steps) {
    throw Error(ErrorKind::kArgument, "switch step exceeds total steps");
  }
  if (!(config.learning_rate > 0.0)) {
    throw Error(ErrorKind::kArgument, "learning rate must be positive");
  }
  const double norm = init.norm();
  if (!(norm > 0.0)) throw Error(ErrorKind::kArgument, "initial prediction has zero norm");

  const bool uses_ml = config.strategy == Strategy::kML || config.strategy == Strategy::kMLGL;
  const LabelSet labels = uses_ml ? build_label_set(map, sphere, config.alpha) : LabelSet{};
  std::vector<std::size_t> sl;
  Vec3 sl_direction = Vec3::Zero();
  if (config.strategy == Strategy::kSL) {
    sl = resolve_sl_labels(map, config);
    for (const auto v : sl) sl_direction += sphere[v];
    sl_direction /= static_cast<double>(sl.size());
  }

  auto active = [&](const Vec3& v_hat, Stage stage) -> ActiveLabel {
    switch (stage) {
      case Stage::kSL: {
        double loss = 0.0;
        for (const auto v : sl) loss += cosine_loss(v_hat, sphere[v]);
        return {sl_direction, loss / static_cast<double>(sl.size()), sl.front()};
      }
      case Stage::kML: {
        const auto choice = ml_loss(v_hat, labels);
        return {sphere[choice.index], choice.loss, choice.index};
      }
      case Stage::kGL: {
        const auto index = gl_target(v_hat, map, sphere, config.gaussian).index;
        return {sphere[index], cosine_loss(v_hat, sphere[index]), index};
      }
    }
    return {Vec3::Zero(), 0.0, 0};
  };

  Trajectory trajectory;
  trajectory.states.reserve(config.total_steps + 1);
  Vec3 v_hat = init / norm;
  for (std::size_t step = 0;; ++step) {
    const Stage stage = stage_at(config.strategy, step, config.switch_step);
    const ActiveLabel label = active(v_hat, stage);
    PredictionState state;
    state.v_hat = v_hat;
    state.stage = stage;
    state.step = step;
    state.loss = label.loss;
    state.label = label.index;
    state.nearest = sphere.nearest(v_hat);
    state.nearest_quality = map.normalized[state.nearest];
    trajectory.states.push_back(state);
    if (step == config.total_steps) break;

    const Vec3& g = label.direction;
    const Vec3 tangent = g - g.dot(v_hat) * v_hat;
    const Vec3 next = v_hat + config.learning_rate * tangent;
    if (next.norm() > 0.0) v_hat = next.normalized();
  }
  return trajectory;
}

VQMap synth_map(std::span<const ClusterSpec> clusters, const ViewSphere& sphere) {
  if (clusters.empty()) throw Error(ErrorKind::kArgument, "no clusters given");
  if (sphere.size() == 0) throw Error(ErrorKind::kArgument, "empty view sphere");
  std::vector<Vec3> centers;
  for (const auto& c : clusters) {
    if (!(c.width > 0.0)) throw Error(ErrorKind::kArgument, "cluster width must be positive");
    if (!(c.peak > 0.0 && c.peak <= 1.0)) {
      throw Error(ErrorKind::kArgument, "cluster peak must lie in (0, 1]");
    }
    if (!(c.center.norm() > 0.0)) throw Error(ErrorKind::kArgument, "cluster center is zero");
    centers.push_back(c.center.normalized());
  }
  std::vector<double> raw(sphere.size(), 0.0);
  for (std::size_t v = 0; v < sphere.size(); ++v) {
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      const double t = geodesic(sphere[v], centers[i]) / clusters[i].width;
      raw[v] = std::max(raw[v], clusters[i].peak * std::exp(-t * t));
    }
  }
  return normalize_map(raw, Orientation::kMaxIsBest, Measure::kVE);
}

Scenario unimodal_scenario(const ViewSphere& sphere) {
  const std::size_t peak = sphere.nearest(Vec3(0.3, -0.2, 0.9).normalized());
  return {{{sphere[peak], 0.6, 1.0}}, {peak}};
}

Scenario bimodal_scenario(const ViewSphere& sphere) {
  const std::size_t a = sphere.nearest(Vec3(1.0, 0.0, 0.2).normalized());
  const std::size_t b = sphere.nearest(Vec3(0.0, 1.0, 0.2).normalized());
  const Vec3 decoy = -(sphere[a] + sphere[b]).normalized();
  return {{{sphere[a], 1.2, 1.0}, {sphere[b], 1.2, 1.0}, {decoy, 0.4, 0.96}}, {a, b}};
}

std::vector<Vec3> random_unit_vectors(std::size_t n, std::uint64_t seed) {
  UniformRng rng(seed);
  std::vector<Vec3> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 2.0 * rng.next() - 1.0;
    const double phi = 2.0 * kPi * rng.next();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    out.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return out;
}

const StrategyResult& StrategyReport::result(Strategy strategy) const {
  for (const auto& r : results) {
    if (r.strategy == strategy) return r;
  }
  throw Error(ErrorKind::kArgument, "strategy not present in report");
}

StrategyReport compare_strategies(const VQMap& map, const ViewSphere& sphere,
                                  const DescentConfig& config, std::size_t n_inits) {
  StrategyReport report;
  report.n_inits = n_inits;
  if (n_inits == 0) return report;

  constexpr Strategy kOrder[] = {Strategy::kSL, Strategy::kML, Strategy::kGL,
                                 Strategy::kMLGL};
  const auto inits = random_unit_vectors(n_inits, config.seed);
  std::vector<std::array<Trajectory, 4>> runs(n_inits);
  parallel_for(n_inits, config.threads, [&](std::size_t i, unsigned) {
    for (std::size_t s = 0; s < 4; ++s) {
      DescentConfig c = config;
      c.strategy = kOrder[s];
      runs[i][s] = descend(map, sphere, c, inits[i]);
    }
  });

  for (std::size_t s = 0; s < 4; ++s) {
    StrategyResult r;
    r.strategy = kOrder[s];
    for (const auto& run : runs) {
      r.final_quality.push_back(run[s].final_state().nearest_quality);
      r.convergence_steps.push_back(run[s].convergence_step());
      r.mean_final_quality += r.final_quality.back();
      r.mean_convergence_step += static_cast<double>(r.convergence_steps.back());
    }
    r.mean_final_quality /= static_cast<double>(n_inits);
    r.mean_convergence_step /= static_cast<double>(n_inits);
    report.results.push_back(std::move(r));
  }

  const std::size_t at = std::min(config.switch_step, config.total_steps);
  for (const auto& run : runs) {
    const auto& state = run[3].states[at];
    const auto target = gl_target(state.v_hat, map, sphere, config.gaussian).index;
    report.mean_boundary_distance += geodesic(state.v_hat, sphere[target]);
  }
  report.mean_boundary_distance /= static_cast<double>(n_inits);
  return report;
}

void write_trajectory_csv(const Trajectory& trajectory, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  out.precision(17);
  out << "step,x,y,z,stage,loss,nearest_vq\n";
  for (const auto& s : trajectory.states) {
    out << s.step << ',' << s.v_hat.x() << ',' << s.v_hat.y() << ',' << s.v_hat.z() << ','
        << to_string(s.stage) << ',' << s.loss << ',' << s.nearest_quality << '\n';
  }
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path.string());
}

}  // namespace vqe
