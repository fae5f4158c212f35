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

// Acceptance suite. Prints one PASS/FAIL line per criterion with the measured
// values and the tolerances they were held to.
//
//   vqe_acceptance                 run every criterion, exit 1 if any fails
//   vqe_acceptance --criterion N   run criterion N only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "record_gen.hpp"
#include "test_support.hpp"
#include "vqe/dataset.hpp"
#include "vqe/descent.hpp"
#include "vqe/face_cleaning.hpp"
#include "vqe/labelgen.hpp"
#include "vqe/measures.hpp"
#include "vqe/mesh.hpp"
#include "vqe/primitives.hpp"
#include "vqe/rasterizer.hpp"
#include "vqe/sampling.hpp"
#include "vqe/sphere_map.hpp"

#ifdef VQE_HAVE_CLI
#include "cli.hpp"
#endif

namespace {

using namespace vqe;
using Clock = std::chrono::steady_clock;

// Tolerances.
constexpr double kCubeRelTol = 0.01;
constexpr double kCubeSeconds = 10.0;
constexpr double kBruteForceSeconds = 300.0;
constexpr double kStabilitySpacings = 2.0;
constexpr double kViewRatioLo = 1.8;
constexpr double kViewRatioHi = 2.2;
constexpr double kFaceLinearTol = 0.3;
constexpr double kLabelSeconds = 30.0;
constexpr double kMlglMin = 0.95;
constexpr double kSlMax = 0.85;
constexpr double kFixedPointTol = 1e-3;
constexpr double kDynamicsSeconds = 120.0;
constexpr double kCleaningSeconds = 60.0;
constexpr double kBrightThreshold = 0.99;

struct Result {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel_err(double value, double expected) { return std::abs(value - expected) / std::abs(expected); }

double median_of_three(const std::function<void()>& fn) {
  std::vector<double> t;
  for (int r = 0; r < 3; ++r) {
    const auto t0 = Clock::now();
    fn();
    t.push_back(seconds_since(t0));
  }
  std::sort(t.begin(), t.end());
  return t[1];
}

// 1. Analytic cube.
void cube_oracle(Result& r) {
  const auto t0 = Clock::now();
  const Mesh cube = load_mesh(test::data_path("cube.off"));
  Rasterizer raster;
  const FaceStats axis = raster.rasterize(cube, make_camera(cube, Vec3::UnitZ(), {1024, 1024}));
  const double vr_a = visibility_ratio(axis, cube);
  const double ve_a = viewpoint_entropy(axis, cube);
  const double kl_a = viewpoint_kl(axis, cube);
  const FaceStats corner = raster.rasterize(cube, make_camera(cube, Vec3(1, 1, 1).normalized(), {1024, 1024}));
  const double vr_c = visibility_ratio(corner, cube);
  const double ve_c = viewpoint_entropy(corner, cube);
  const double secs = seconds_since(t0);
  r.detail.precision(9);
  r.detail << "on-axis VR=" << vr_a << " VE=" << ve_a << " VKL=" << kl_a << "; corner VR=" << vr_c
           << " VE=" << ve_c << "; " << secs << " s (tol 1%, VE on-axis exact, < 10 s)";
  r.require(rel_err(vr_a, 1.0 / 6.0) <= kCubeRelTol, "on-axis VR");
  r.require(ve_a == 0.0, "on-axis VE");
  r.require(rel_err(kl_a, std::log(6.0)) <= kCubeRelTol, "on-axis VKL");
  r.require(rel_err(vr_c, 0.5) <= kCubeRelTol, "corner VR");
  r.require(rel_err(ve_c, std::log(3.0)) <= kCubeRelTol, "corner VE");
  r.require(secs < kCubeSeconds, "runtime");
}

// 2. Argbest from evaluate_model against an exhaustive scan, with every 25th
// view recomputed through the single-view measure functions.
void brute_force(Result& r) {
  const auto t0 = Clock::now();
  const ViewSphere sphere = fibonacci_sphere(1000);
  EvaluationOptions options;
  options.resolution = {512, 512};
  std::size_t mismatches = 0, recomputed = 0, raw_mismatches = 0;
  for (const char* name : {"chair.off", "airplane.off", "torus_10k.off"}) {
    const Mesh mesh = load_mesh(test::data_path(name));
    const ModelEvaluation eval = evaluate_model(mesh, sphere, options);
    std::vector<FaceStats> stats;
    std::vector<std::size_t> picked;
    Rasterizer raster;
    for (std::size_t v = 0; v < sphere.size(); v += 25) {
      stats.push_back(raster.rasterize(mesh, make_camera(mesh, sphere[v], options.resolution)));
      picked.push_back(v);
    }
    for (auto m : kAllMeasures) {
      const VQMap& map = eval.map(m);
      const std::size_t scan =
          test::oracle::arg_best(map.raw, map.orientation == Orientation::kMaxIsBest, map.valid);
      mismatches += scan != map.best_index;
    }
    for (std::size_t k = 0; k < picked.size(); ++k) {
      const std::size_t v = picked[k];
      if (!eval.map(Measure::kVE).is_valid(v)) continue;
      ++recomputed;
      raw_mismatches += viewpoint_entropy(stats[k], mesh) != eval.map(Measure::kVE).raw[v];
      raw_mismatches += visibility_ratio(stats[k], mesh) != eval.map(Measure::kVR).raw[v];
      raw_mismatches += viewpoint_kl(stats[k], mesh) != eval.map(Measure::kVKL).raw[v];
    }
    r.detail << name << " ";
  }
  const double secs = seconds_since(t0);
  r.detail << "argbest mismatches=" << mismatches << "/12, recomputed views=" << recomputed
           << " raw mismatches=" << raw_mismatches << "; " << secs << " s (exact, < 300 s)";
  r.require(mismatches == 0, "argbest");
  r.require(raw_mismatches == 0, "raw values");
  r.require(secs < kBruteForceSeconds, "runtime");
}

// 3. Normalization contract.
void normalization(Result& r) {
  std::mt19937_64 rng(2024);
  std::size_t bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 500;
    std::vector<double> raw(n);
    std::vector<std::uint8_t> valid(n, 1);
    std::normal_distribution<double> gauss(0.0, std::pow(10.0, static_cast<double>(rng() % 7) - 3.0));
    for (auto& x : raw) x = gauss(rng);
    for (std::size_t i = 0; i < n / 10; ++i) valid[rng() % n] = 0;
    valid[0] = valid[1] = 1;
    raw[1] = raw[0] + 1.0;  // at least two distinct valid values
    const auto orientation = trial % 2 ? Orientation::kMaxIsBest : Orientation::kMinIsBest;
    const VQMap map = normalize_map(raw, valid, orientation);
    double lo = 2.0, hi = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!valid[i]) continue;
      lo = std::min(lo, map.normalized[i]);
      hi = std::max(hi, map.normalized[i]);
    }
    bad += lo != 0.0 || hi != 1.0 || map.normalized[map.best_index] != 1.0 ||
           map.normalized[map.worst_index] != 0.0;
  }
  std::size_t constant_bad = 0;
  for (double c : {0.0, -3.5, 1e300}) {
    for (auto o : {Orientation::kMaxIsBest, Orientation::kMinIsBest}) {
      const VQMap map = normalize_map(std::vector<double>(17, c), o);
      constant_bad += std::any_of(map.normalized.begin(), map.normalized.end(), [](double x) { return x != 1.0; });
    }
  }
  r.detail << "random maps violating [0,1] attainment=" << bad << "/100, constant maps not all-1=" << constant_bad
           << "/6 (exact)";
  r.require(bad == 0, "random maps");
  r.require(constant_bad == 0, "constant maps");
}

// 4. Resolution stability and timing scaling.
void stability_and_scaling(Result& r) {
  const ViewSphere sphere = fibonacci_sphere(1000);
  const double spacing = sphere.mean_spacing();
  const Mesh airplane = load_mesh(test::data_path("airplane.off"));
  auto ve_argmax = [&](std::uint32_t res) {
    EvaluationOptions options;
    options.resolution = {res, res};
    return evaluate_model(airplane, sphere, options).map(Measure::kVE).best_index;
  };
  const std::size_t a512 = ve_argmax(512), a1024 = ve_argmax(1024);
  const double angle = test::geodesic(sphere[a512], sphere[a1024]);
  r.detail.precision(4);
  r.detail << "airplane VE argmax 512:" << a512 << " 1024:" << a1024 << " geodesic=" << angle
           << " rad (limit " << kStabilitySpacings * spacing << ")";
  r.require(angle <= kStabilitySpacings * spacing, "resolution stability");

  auto timed = [](const Mesh& mesh, std::size_t views, std::uint32_t res) {
    const ViewSphere s = fibonacci_sphere(views);
    EvaluationOptions options;
    options.resolution = {res, res};
    options.threads = 1;
    return median_of_three([&] { evaluate_model(mesh, s, options); });
  };
  const Mesh t10k = load_mesh(test::data_path("torus_10k.off"));
  const double view_ratio = timed(t10k, 1000, 512) / timed(t10k, 500, 512);
  r.detail << "; time(1000)/time(500)=" << view_ratio << " (want [1.8, 2.2])";
  r.require(view_ratio >= kViewRatioLo && view_ratio <= kViewRatioHi, "view scaling");

  const Mesh t1k = load_mesh(test::data_path("torus_1k.off"));
  const double linear = static_cast<double>(t10k.face_count()) / static_cast<double>(t1k.face_count());
  const double face_ratio = timed(t10k, 1000, 256) / timed(t1k, 1000, 256);
  r.detail << "; time(10k faces)/time(1k faces) at 256^2=" << face_ratio << " (want " << linear << " +-30%)";
  r.require(std::abs(face_ratio - linear) <= kFaceLinearTol * linear, "face-count scaling");
}

// 5. Label machinery.
void label_machinery(Result& r) {
  const auto t0 = Clock::now();
  const ViewSphere sphere = fibonacci_sphere(1000);
  const VQMap map = synth_map(bimodal_scenario(sphere).clusters, sphere);
  const LabelSet labels = build_label_set(map, sphere, 0.9);
  const auto preds = random_unit_vectors(100, 5150);
  const GaussianParams params;
  std::size_t ml_bad = 0, gl_bad = 0;
  for (const Vec3& pred : preds) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t k = 0; k < labels.size(); ++k) {
      const double loss = 1.0 - pred.dot(labels.vectors[k]);
      if (loss < best) {
        best = loss;
        arg = labels.indices[k];
      }
    }
    const LabelChoice ml = ml_loss(pred, labels);
    ml_bad += ml.index != arg || std::abs(ml.loss - best) > 1e-15;

    double best_w = -std::numeric_limits<double>::infinity();
    std::size_t gl_arg = 0;
    for (std::size_t v = 0; v < sphere.size(); ++v) {
      const double d = (sphere[v] - pred).norm();
      const double w = map.normalized[v] * (std::exp(-d / (2.0 * params.sigma * params.sigma)) + params.s);
      if (w > best_w) {
        best_w = w;
        gl_arg = v;
      }
    }
    gl_bad += gl_target(pred, map, sphere, params).index != gl_arg;
  }
  std::size_t nest_bad = 0;
  const double alphas[] = {0.9, 0.95, 0.99, 1.0};
  for (std::size_t i = 0; i + 1 < std::size(alphas); ++i) {
    const auto loose = build_label_set(map, sphere, alphas[i]).indices;
    const auto tight = build_label_set(map, sphere, alphas[i + 1]).indices;
    nest_bad += !std::includes(loose.begin(), loose.end(), tight.begin(), tight.end());
  }
  const double secs = seconds_since(t0);
  r.detail << "ml mismatches=" << ml_bad << "/100, gl mismatches=" << gl_bad << "/100, nesting violations="
           << nest_bad << "/3; " << secs << " s (exact, < 30 s)";
  r.require(ml_bad == 0, "ml_loss");
  r.require(gl_bad == 0, "gl_target");
  r.require(nest_bad == 0, "nesting");
  r.require(secs < kLabelSeconds, "runtime");
}

// 6. Two-stage dynamics.
void dynamics(Result& r) {
  const auto t0 = Clock::now();
  const ViewSphere sphere = fibonacci_sphere(1000);
  const Scenario scenario = bimodal_scenario(sphere);
  const VQMap map = synth_map(scenario.clusters, sphere);
  DescentConfig config;
  config.seed = 7;
  config.sl_labels = scenario.conflicting_labels;
  const StrategyReport report = compare_strategies(map, sphere, config, 100);
  const double sl = report.result(Strategy::kSL).mean_final_quality;
  const double ml = report.result(Strategy::kML).mean_final_quality;
  const double gl = report.result(Strategy::kGL).mean_final_quality;
  const double mlgl = report.result(Strategy::kMLGL).mean_final_quality;

  double worst_tangent = 0.0;
  for (const Vec3& init : random_unit_vectors(100, config.seed)) {
    const Trajectory t = descend(map, sphere, config, init);
    const Vec3& v = t.final_state().v_hat;
    worst_tangent = std::max(worst_tangent, tangent_gradient_norm(v, sphere[gl_target(v, map, sphere).index]));
  }
  const double secs = seconds_since(t0);
  r.detail.precision(4);
  r.detail << "mean quality SL=" << sl << " ML=" << ml << " GL=" << gl << " ML+GL=" << mlgl
           << "; max tangent gradient at the end=" << worst_tangent << "; " << secs
           << " s (ML+GL >= GL >= SL, ML+GL >= 0.95, SL <= 0.85, tangent < 1e-3, < 120 s)";
  r.require(mlgl >= gl && gl >= sl, "ordering");
  r.require(mlgl >= kMlglMin, "ML+GL level");
  r.require(sl <= kSlMax, "SL level");
  r.require(worst_tangent < kFixedPointTol, "fixed point");
  r.require(secs < kDynamicsSeconds, "runtime");
}

// 7. Hidden-face removal.
void cleaning(Result& r) {
  const auto t0 = Clock::now();
  CleaningOptions options;
  options.resolution = {512, 512};
  const Mesh nested = load_mesh(test::data_path("nested_cubes.off"));
  const CleaningResult inner = remove_hidden_faces(nested, options);
  std::vector<std::uint32_t> expected(12);
  for (std::uint32_t i = 0; i < 12; ++i) expected[i] = 12 + i;
  const CleaningResult convex = remove_hidden_faces(load_mesh(test::data_path("icosphere.off")), options);
  const CleaningResult again = remove_hidden_faces(inner.mesh, options);
  const double secs = seconds_since(t0);
  r.detail << "nested cube removed " << inner.removed.size() << "/24 (interior 12), icosphere removed "
           << convex.removed.size() << ", second pass removed " << again.removed.size() << "; " << secs
           << " s (< 60 s)";
  r.require(inner.removed == expected, "interior faces");
  r.require(convex.removed.empty(), "convex");
  r.require(again.removed.empty() && again.mesh.faces() == inner.mesh.faces(), "idempotence");
  r.require(secs < kCleaningSeconds, "runtime");
}

bool same_bits(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return std::memcmp(&a, &b, sizeof a) == 0;
}

// 8. Persistence.
void persistence(Result& r) {
  test::TempDir dir("acceptance");
  std::size_t json_bad = 0, csv_bad = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ModelRecord record = test::random_record(1000 + seed, 50 + 97 * seed);
    const auto path = dir / ("r" + std::to_string(seed) + ".json");
    write_record(record, path);
    const ModelRecord back = read_record(path);
    const RecordTable table = read_record_csv(csv_sidecar(path));
    const ViewSphere sphere = fibonacci_sphere(record.sphere_size);
    json_bad += !records_identical(record, back);
    bool csv_ok = table.directions.size() == record.sphere_size;
    for (std::size_t v = 0; csv_ok && v < record.sphere_size; ++v) {
      csv_ok = table.directions[v] == sphere[v];
      for (std::size_t m = 0; m < 4; ++m) {
        csv_ok = csv_ok && same_bits(table.raw[m][v], record.measures[m].raw[v]) &&
                 same_bits(table.normalized[m][v], record.measures[m].normalized[v]);
      }
    }
    csv_bad += !csv_ok;
  }

  const ViewSphere sphere = fibonacci_sphere(1000);
  const Scenario s = bimodal_scenario(sphere);
  const std::vector<ClusterSpec> two(s.clusters.begin(), s.clusters.begin() + 2);
  const VQMap map = synth_map(two, sphere);
  const SphereImage image = render_sphere_map(map, sphere, Projection::kMercator, 512);
  const std::size_t components = count_components(image, kBrightThreshold);
  export_sphere_map(map, sphere, dir / "map.pgm", Projection::kMercator, 512);
  const std::string bytes = test::read_file(dir / "map.pgm");
  const std::string header = "P5\n512 512\n255\n";
  SphereImage stored{512, 512, {}};
  for (std::size_t i = header.size(); i < bytes.size(); ++i) {
    stored.values.push_back(static_cast<unsigned char>(bytes[i]) / 255.0);
  }
  const std::size_t stored_components =
      bytes.rfind(header, 0) == 0 && stored.values.size() == 512u * 512u ? count_components(stored, kBrightThreshold)
                                                                        : 0;
  r.detail << "JSON round-trip failures=" << json_bad << "/10, CSV failures=" << csv_bad
           << "/10; Mercator components above 0.99: image " << components << ", PGM " << stored_components
           << " (exact, want 2)";
  r.require(json_bad == 0, "JSON");
  r.require(csv_bad == 0, "CSV");
  r.require(components == 2 && stored_components == 2, "components");
}

// 9. Determinism under parallelism.
void determinism(Result& r) {
  test::TempDir dir("acceptance");
  const std::string mesh = test::data_path("chair.off");
  std::string bytes[2];
  const char* threads[] = {"1", "8"};
  for (int k = 0; k < 2; ++k) {
    const auto out = dir / (std::string("t") + threads[k] + ".json");
#ifdef VQE_HAVE_CLI
    std::vector<std::string> args = {"vqe", "sample-vq", mesh, "-o", out.string(), "--threads", threads[k]};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream sink_out, sink_err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), sink_out, sink_err);
    r.require(code == 0, "sample-vq exit code");
#else
    EvaluationOptions options;
    options.threads = static_cast<unsigned>(std::stoi(threads[k]));
    const ViewSphere sphere = fibonacci_sphere(1000);
    write_record(make_record("chair", evaluate_model(load_mesh(mesh), sphere, options), 1000, options), out);
#endif
    bytes[k] = test::read_file(out) + test::read_file(csv_sidecar(out));
  }
  r.detail << "chair, 1000 views at 1024^2: record bytes " << bytes[0].size() << " vs " << bytes[1].size()
           << (bytes[0] == bytes[1] ? ", identical" : ", differ");
  r.require(!bytes[0].empty() && bytes[0] == bytes[1], "byte identity");
}

struct Criterion {
  int id;
  const char* name;
  void (*run)(Result&);
};

const Criterion kCriteria[] = {
    {1, "analytic cube", cube_oracle},
    {2, "brute-force argbest", brute_force},
    {3, "normalization contract", normalization},
    {4, "resolution stability and scaling", stability_and_scaling},
    {5, "label machinery", label_machinery},
    {6, "two-stage dynamics", dynamics},
    {7, "hidden-face removal", cleaning},
    {8, "persistence", persistence},
    {9, "determinism under threads", determinism},
};

bool run_one(const Criterion& c) {
  Result r;
  const auto t0 = Clock::now();
  try {
    c.run(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail << " [exception: " << e.what() << "]";
  }
  std::printf("%s %d %s: %s (%.1f s)\n", r.pass ? "PASS" : "FAIL", c.id, c.name, r.detail.str().c_str(),
              seconds_since(t0));
  std::fflush(stdout);
  return r.pass;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
    only = std::atoi(argv[2]);
  } else if (argc != 1) {
    std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
    return 2;
  }
  int failed = 0, ran = 0;
  for (const auto& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    failed += !run_one(c);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  if (only == 0) std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
