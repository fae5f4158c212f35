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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vqe/mesh.hpp"
#include "vqe/rasterizer.hpp"
#include "vqe/sampling.hpp"

namespace vqe {

enum class Measure { kVE = 0, kVR = 1, kVKL = 2, kVMI = 3 };
inline constexpr std::array<Measure, 4> kAllMeasures = {Measure::kVE, Measure::kVR,
                                                       Measure::kVKL, Measure::kVMI};

enum class Orientation { kMaxIsBest, kMinIsBest };

std::string_view to_string(Measure measure);
std::optional<Measure> parse_measure(std::string_view name);
std::string_view to_string(Orientation orientation);

/// VE and VR prefer high values, VKL and VMI low ones.
Orientation orientation_of(Measure measure);

/// Projected area per polygon for one view. Sparse: only polygons with at
/// least one pixel, in ascending polygon order.
struct ViewDistribution {
  std::vector<std::uint32_t> polygons;
  std::vector<std::uint64_t> pixels;
  std::uint64_t total = 0;
};

/// Sums triangle pixel counts into their polygons.
ViewDistribution polygon_distribution(const FaceStats& stats, const Mesh& mesh);

/// p(z), the view-averaged conditional p(z|v), dense over polygons.
struct FacePrior {
  std::vector<double> p;
};

// All logarithms are natural; 0 log 0 is taken as 0. Each measure throws
// kEmptyView when the view has no covered pixels.

/// -sum a_z/a_t log(a_z/a_t).
double viewpoint_entropy(const ViewDistribution& view);
double viewpoint_entropy(const FaceStats& stats, const Mesh& mesh);

/// Sum of A_z/A_t over polygons with at least one pixel.
double visibility_ratio(const ViewDistribution& view, const Mesh& mesh);
double visibility_ratio(const FaceStats& stats, const Mesh& mesh);

/// sum a_z/a_t log(a_z A_t / (a_t A_z)). Throws kMeasureUndefined when a
/// polygon with zero area covers pixels.
double viewpoint_kl(const ViewDistribution& view, const Mesh& mesh);
double viewpoint_kl(const FaceStats& stats, const Mesh& mesh);

/// Uniform average of p(z|v) over the views with a_t > 0. Throws kEmptyView
/// when no view qualifies.
FacePrior face_prior(std::span<const ViewDistribution> views, std::size_t polygon_count);
FacePrior face_prior(std::span<const FaceStats> views, const Mesh& mesh);

/// sum p(z|v) log(p(z|v)/p(z)). Throws kInconsistentPrior when p(z) = 0 for
/// a polygon the view sees.
double viewpoint_mi(const ViewDistribution& view, const FacePrior& prior);
double viewpoint_mi(const FaceStats& stats, const Mesh& mesh, const FacePrior& prior);

/// Raw and normalized quality of one measure over a view sphere.
///
/// normalized[v] = (raw[v] - raw[worst]) / (raw[best] - raw[worst]), with
/// best and worst taken according to the orientation (ties to the lowest
/// index). A constant map normalizes to all ones. Views marked invalid are
/// ignored when picking best/worst and carry normalized value 0.
struct VQMap {
  Measure measure = Measure::kVE;
  Orientation orientation = Orientation::kMaxIsBest;
  std::vector<double> raw;
  std::vector<double> normalized;
  std::vector<std::uint8_t> valid;
  std::size_t best_index = 0;
  std::size_t worst_index = 0;

  std::size_t size() const { return raw.size(); }
  bool is_valid(std::size_t view) const { return valid[view] != 0; }
};

/// Throws kArgument when raw is empty or no view is valid.
VQMap normalize_map(std::span<const double> raw, Orientation orientation,
                    Measure measure = Measure::kVE);
VQMap normalize_map(std::span<const double> raw, std::span<const std::uint8_t> valid,
                    Orientation orientation, Measure measure = Measure::kVE);

struct EvaluationOptions {
  Resolution resolution{1024, 1024};
  CameraOptions camera;
  unsigned threads = 0;  ///< 0: VQE_THREADS or hardware concurrency
};

/// A view left out of one or more maps, with the reason.
struct ViewIssue {
  std::size_t view = 0;
  std::string measure;  ///< "all" when the whole view is excluded
  std::string reason;
};

struct ModelEvaluation {
  std::array<VQMap, 4> maps;  ///< indexed by Measure
  std::vector<std::uint64_t> total_pixels;
  std::vector<ViewIssue> issues;
  std::size_t clipped_views = 0;  ///< views where the frustum cut geometry

  const VQMap& map(Measure m) const { return maps[static_cast<std::size_t>(m)]; }
};

/// Rasterizes each view once and derives all four measures from the shared
/// per-view statistics; VMI uses the prior of the same view set. Views that
/// render empty are excluded everywhere. The result is a deterministic
/// function of (mesh, sphere, resolution, camera) regardless of threads.
ModelEvaluation evaluate_model(const Mesh& mesh, const ViewSphere& sphere,
                               const EvaluationOptions& options = {});

}  // namespace vqe
