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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "test_support.hpp"
#include "vqe/errors.hpp"
#include "vqe/measures.hpp"
#include "vqe/primitives.hpp"
#include "vqe/sampling.hpp"

namespace vqe {
namespace {

namespace oracle = test::oracle;

const Vec3 kCorner = Vec3(1, 1, 1).normalized();

// Conditional polygon distribution of one view, dense.
std::vector<double> conditional(const FaceStats& stats, const Mesh& mesh) {
  std::vector<double> p(mesh.polygon_count(), 0.0);
  for (std::size_t f = 0; f < mesh.face_count(); ++f) p[mesh.polygon_of(f)] += stats.pixel_counts[f];
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (total > 0.0) {
    for (double& x : p) x /= total;
  }
  return p;
}

std::vector<FaceStats> render_all(const Mesh& mesh, const ViewSphere& sphere, std::uint32_t res,
                                  const CameraOptions& options = {}) {
  Rasterizer r;
  std::vector<FaceStats> out;
  for (const auto& d : sphere.directions()) out.push_back(r.rasterize(mesh, make_camera(mesh, d, {res, res}, options)));
  return out;
}

ViewDistribution dist_of(std::vector<std::uint32_t> polygons, std::vector<std::uint64_t> pixels) {
  ViewDistribution d;
  d.polygons = std::move(polygons);
  d.pixels = std::move(pixels);
  d.total = std::accumulate(d.pixels.begin(), d.pixels.end(), std::uint64_t{0});
  return d;
}

TEST(Measures, Orientation) {
  EXPECT_EQ(orientation_of(Measure::kVE), Orientation::kMaxIsBest);
  EXPECT_EQ(orientation_of(Measure::kVR), Orientation::kMaxIsBest);
  EXPECT_EQ(orientation_of(Measure::kVKL), Orientation::kMinIsBest);
  EXPECT_EQ(orientation_of(Measure::kVMI), Orientation::kMinIsBest);
  for (auto m : kAllMeasures) EXPECT_EQ(parse_measure(to_string(m)), m);
  EXPECT_FALSE(parse_measure("VX").has_value());
}

TEST(Entropy, PointMassAndUniformPair) {
  EXPECT_EQ(viewpoint_entropy(dist_of({3}, {500})), 0.0);
  EXPECT_DOUBLE_EQ(viewpoint_entropy(dist_of({0, 7}, {40, 40})), std::log(2.0));
  EXPECT_THROW(viewpoint_entropy(dist_of({}, {})), Error);
}

TEST(Entropy, CubeCornerIsLogThree) {
  const Mesh cube = load_mesh(test::data_path("cube.off"));
  const FaceStats stats = rasterize(cube, make_camera(cube, kCorner, {1024, 1024}));
  EXPECT_NEAR(viewpoint_entropy(stats, cube), std::log(3.0), 0.01 * std::log(3.0));
  EXPECT_NEAR(viewpoint_entropy(stats, cube), oracle::entropy(conditional(stats, cube)), 1e-12);
}

TEST(VisibilityRatio, CubeOnAxisAndCorner) {
  const Mesh cube = load_mesh(test::data_path("cube.off"));
  const FaceStats axis = rasterize(cube, make_camera(cube, Vec3::UnitZ(), {1024, 1024}));
  const FaceStats corner = rasterize(cube, make_camera(cube, kCorner, {1024, 1024}));
  EXPECT_NEAR(visibility_ratio(axis, cube), 1.0 / 6.0, 0.01 / 6.0);
  EXPECT_NEAR(visibility_ratio(corner, cube), 0.5, 0.005);
}

TEST(VisibilityRatio, SingleTriangleIsFullyVisible) {
  const Mesh tri = Mesh::from_arrays({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
  const FaceStats stats = rasterize(tri, make_camera(tri, Vec3::UnitZ(), {64, 64}));
  EXPECT_DOUBLE_EQ(visibility_ratio(stats, tri), 1.0);
}

TEST(ViewpointKl, MatchingDistributionsGiveZero) {
  // Two triangles with areas 1 and 3 seen with pixels 100 and 300.
  const Mesh two = Mesh::from_arrays({{0, 0, 0}, {1, 0, 0}, {0, 2, 0}, {5, 0, 0}, {8, 0, 0}, {5, 2, 0}},
                                     {{0, 1, 2}, {3, 4, 5}});
  EXPECT_NEAR(viewpoint_kl(dist_of({0, 1}, {100, 300}), two), 0.0, 1e-15);
}

TEST(ViewpointKl, CubeOnAxisIsLogSix) {
  const Mesh cube = load_mesh(test::data_path("cube.off"));
  const FaceStats stats = rasterize(cube, make_camera(cube, Vec3::UnitZ(), {1024, 1024}));
  EXPECT_NEAR(viewpoint_kl(stats, cube), std::log(6.0), 0.01 * std::log(6.0));
}

TEST(ViewpointKl, NonNegativeAndMatchesOracle) {
  const Mesh mesh = load_mesh(test::data_path("chair.off"));
  const ViewSphere sphere = fibonacci_sphere(80);
  std::vector<double> area(mesh.polygon_areas());
  for (double& a : area) a /= mesh.total_area();
  for (const auto& stats : render_all(mesh, sphere, 96)) {
    const double v = viewpoint_kl(stats, mesh);
    EXPECT_GE(v, -1e-9);
    EXPECT_NEAR(v, oracle::kl(conditional(stats, mesh), area), 1e-12);
  }
}

TEST(ViewpointKl, ZeroAreaPolygonWithPixelsIsUndefined) {
  const Mesh mesh = Mesh::from_arrays({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
  // Fake a distribution where a polygon of area 0 owns pixels.
  const Mesh with_flat = Mesh::from_arrays({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {2, 0, 0}},
                                           {{0, 1, 2}, {0, 1, 3}});
  try {
    viewpoint_kl(dist_of({0, 1}, {10, 10}), with_flat);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMeasureUndefined);
  }
  EXPECT_NO_THROW(viewpoint_kl(dist_of({0}, {10}), mesh));
}

TEST(FacePrior, SingleViewEqualsItsConditional) {
  const Mesh cube = load_mesh(test::data_path("cube.off"));
  const std::vector<FaceStats> one = {rasterize(cube, make_camera(cube, kCorner, {128, 128}))};
  const FacePrior prior = face_prior(one, cube);
  const auto p = conditional(one[0], cube);
  for (std::size_t z = 0; z < p.size(); ++z) EXPECT_DOUBLE_EQ(prior.p[z], p[z]);
  EXPECT_NEAR(viewpoint_mi(one[0], cube, prior), 0.0, 1e-15);
}

TEST(FacePrior, AntipodalPairAverages) {
  const Mesh sphere_mesh = load_mesh(test::data_path("icosphere.off"));
  const Vec3 d = Vec3(0.3, -0.4, 0.866).normalized();
  const std::vector<FaceStats> pair = render_all(sphere_mesh, ViewSphere({d, -d}), 128);
  const FacePrior prior = face_prior(pair, sphere_mesh);
  const auto a = conditional(pair[0], sphere_mesh);
  const auto b = conditional(pair[1], sphere_mesh);
  for (std::size_t z = 0; z < a.size(); ++z) EXPECT_NEAR(prior.p[z], 0.5 * (a[z] + b[z]), 1e-15);
}

TEST(FacePrior, CubeIsUniformOverTheSphere) {
  const Mesh cube = load_mesh(test::data_path("cube.off"));
  const FacePrior prior = face_prior(render_all(cube, fibonacci_sphere(1000), 128), cube);
  ASSERT_EQ(prior.p.size(), 6u);
  for (double p : prior.p) EXPECT_NEAR(p, 1.0 / 6.0, 0.02 / 6.0);
  EXPECT_NEAR(std::accumulate(prior.p.begin(), prior.p.end(), 0.0), 1.0, 1e-12);
}

TEST(ViewpointMi, IdenticalConditionalsGiveZero) {
  const Mesh cube = load_mesh(test::data_path("cube.off"));
  const FaceStats s = rasterize(cube, make_camera(cube, kCorner, {64, 64}));
  const std::vector<FaceStats> twice = {s, s};
  const FacePrior prior = face_prior(twice, cube);
  EXPECT_NEAR(viewpoint_mi(s, cube, prior), 0.0, 1e-15);
}

TEST(ViewpointMi, CubeMatchesReferenceMutualInformation) {
  const Mesh cube = load_mesh(test::data_path("cube.off"));
  const ViewSphere sphere = fibonacci_sphere(1000);
  const auto stats = render_all(cube, sphere, 128);

  // Reference: dense conditionals, uniform average prior, KL per view.
  std::vector<std::vector<double>> cond;
  std::vector<double> prior(6, 0.0);
  for (const auto& s : stats) {
    cond.push_back(conditional(s, cube));
    for (std::size_t z = 0; z < 6; ++z) prior[z] += cond.back()[z] / 1000.0;
  }
  const FacePrior lib_prior = face_prior(stats, cube);
  double mean_ref = 0.0, mean_lib = 0.0;
  for (std::size_t v = 0; v < stats.size(); ++v) {
    const double ref = oracle::kl(cond[v], prior);
    const double lib = viewpoint_mi(stats[v], cube, lib_prior);
    EXPECT_NEAR(lib, ref, 1e-12);
    EXPECT_GE(lib, -1e-9);
    mean_ref += ref / 1000.0;
    mean_lib += lib / 1000.0;
  }
  EXPECT_NEAR(mean_lib, mean_ref, 1e-9);
  EXPECT_GE(mean_lib, 0.0);

  // On-axis spot value: one face of prior weight ~1/6, so about ln 6.
  const FaceStats axis = rasterize(cube, make_camera(cube, Vec3::UnitZ(), {128, 128}));
  const double ref_axis = oracle::kl(conditional(axis, cube), prior);
  EXPECT_NEAR(viewpoint_mi(axis, cube, lib_prior), ref_axis, 0.01 * ref_axis);
  EXPECT_NEAR(ref_axis, std::log(6.0), 0.02 * std::log(6.0));
}

TEST(ViewpointMi, UnseenPriorIsInconsistent) {
  FacePrior prior;
  prior.p = {1.0, 0.0};
  try {
    viewpoint_mi(dist_of({0, 1}, {5, 5}), prior);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInconsistentPrior);
  }
}

TEST(Normalize, Examples) {
  const std::vector<double> raw = {2, 4, 3};
  const VQMap up = normalize_map(raw, Orientation::kMaxIsBest);
  EXPECT_EQ(up.normalized, (std::vector<double>{0, 1, 0.5}));
  EXPECT_EQ(up.best_index, 1u);
  EXPECT_EQ(up.worst_index, 0u);
  const VQMap down = normalize_map(raw, Orientation::kMinIsBest);
  EXPECT_EQ(down.normalized, (std::vector<double>{1, 0, 0.5}));
  EXPECT_EQ(down.best_index, 0u);
  EXPECT_EQ(down.worst_index, 1u);
  const VQMap flat = normalize_map(std::vector<double>{5, 5, 5}, Orientation::kMaxIsBest);
  EXPECT_EQ(flat.normalized, (std::vector<double>{1, 1, 1}));
  EXPECT_EQ(flat.best_index, 0u);
}

TEST(Normalize, TiesGoToTheLowestIndex) {
  const VQMap m = normalize_map(std::vector<double>{1, 3, 0, 3, 0}, Orientation::kMaxIsBest);
  EXPECT_EQ(m.best_index, 1u);
  EXPECT_EQ(m.worst_index, 2u);
}

TEST(Normalize, InvalidViewsAreSkipped) {
  const std::vector<double> raw = {9, 2, NAN, 4};
  const std::vector<std::uint8_t> valid = {0, 1, 0, 1};
  const VQMap m = normalize_map(raw, valid, Orientation::kMaxIsBest);
  EXPECT_EQ(m.best_index, 3u);
  EXPECT_EQ(m.worst_index, 1u);
  EXPECT_EQ(m.normalized, (std::vector<double>{0, 0, 0, 1}));
  EXPECT_THROW(normalize_map(raw, std::vector<std::uint8_t>(4, 0), Orientation::kMaxIsBest), Error);
  EXPECT_THROW(normalize_map(std::vector<double>{}, Orientation::kMaxIsBest), Error);
}

TEST(Normalize, NeverProducesNegativeZero) {
  const VQMap m = normalize_map(std::vector<double>{-1, -3, -2}, Orientation::kMinIsBest);
  for (double x : m.normalized) EXPECT_FALSE(x == 0.0 && std::signbit(x));
}

TEST(Evaluate, CubeVrPeaksAtTheCorners) {
  const Mesh cube = load_mesh(test::data_path("cube.off"));
  const ViewSphere sphere = fibonacci_sphere(1000);
  for (double df : {0.5, 2.0}) {
    EvaluationOptions options;
    options.resolution = {128, 128};
    options.camera.distance_factor = df;
    const ModelEvaluation eval = evaluate_model(cube, sphere, options);
    const VQMap& vr = eval.map(Measure::kVR);
    // A side can only be visible if the eye is beyond its plane, so VR is at
    // most the number of slabs the eye lies outside of. Sides seen at a
    // grazing angle may fall between pixel centers; past a margin they must
    // be counted.
    for (std::size_t v = 0; v < sphere.size(); ++v) {
      const Vec3 eye = Vec3::Constant(0.5) + df * std::sqrt(3.0) * sphere[v];
      const Eigen::Array3d margin = (eye.array() - 0.5).abs() - 0.5;
      const int outside = (margin > 0.0).count();
      const bool grazing = ((margin > 0.0) && (margin < 0.06)).any();
      EXPECT_LE(vr.raw[v], outside / 6.0 + 1e-12) << "df " << df << " view " << v;
      if (!grazing) EXPECT_NEAR(vr.raw[v], outside / 6.0, 1e-12) << "df " << df << " view " << v;
    }
    if (df == 2.0) {
      for (int c = 0; c < 8; ++c) {
        const Vec3 corner(c & 1 ? 1 : -1, c & 2 ? 1 : -1, c & 4 ? 1 : -1);
        EXPECT_EQ(vr.normalized[sphere.nearest(corner.normalized())], 1.0) << corner.transpose();
      }
    }
    // At the default distance only the exact corner direction leaves the eye
    // outside all three slabs, and no sphere view lands on it.
    EXPECT_NEAR(vr.raw[vr.best_index], df == 2.0 ? 0.5 : 1.0 / 3.0, 1e-12);
  }
}

TEST(Evaluate, MapsSpanZeroToOneAndMeasuresStayInRange) {
  const Mesh mesh = load_mesh(test::data_path("chair.off"));
  const ViewSphere sphere = fibonacci_sphere(200);
  EvaluationOptions options;
  options.resolution = {96, 96};
  const ModelEvaluation eval = evaluate_model(mesh, sphere, options);
  EXPECT_TRUE(eval.issues.empty());
  for (auto m : kAllMeasures) {
    const VQMap& map = eval.map(m);
    EXPECT_EQ(map.normalized[map.best_index], 1.0);
    EXPECT_EQ(map.normalized[map.worst_index], 0.0);
    EXPECT_EQ(*std::min_element(map.normalized.begin(), map.normalized.end()), 0.0);
    EXPECT_EQ(*std::max_element(map.normalized.begin(), map.normalized.end()), 1.0);
    EXPECT_EQ(map.best_index, oracle::arg_best(map.raw, map.orientation == Orientation::kMaxIsBest));
  }
  const auto stats = render_all(mesh, sphere, 96);
  for (std::size_t v = 0; v < sphere.size(); ++v) {
    const auto p = conditional(stats[v], mesh);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-9);
    const double visible = static_cast<double>(std::count_if(p.begin(), p.end(), [](double x) { return x > 0; }));
    EXPECT_GE(eval.map(Measure::kVE).raw[v], -1e-9);
    EXPECT_LE(eval.map(Measure::kVE).raw[v], std::log(visible) + 1e-9);
    EXPECT_GE(eval.map(Measure::kVR).raw[v], -1e-9);
    EXPECT_LE(eval.map(Measure::kVR).raw[v], 1.0 + 1e-9);
    EXPECT_GE(eval.map(Measure::kVKL).raw[v], -1e-9);
    EXPECT_GE(eval.map(Measure::kVMI).raw[v], -1e-9);
    EXPECT_EQ(eval.total_pixels[v], stats[v].total_pixels);
  }
}

TEST(Evaluate, SubdivisionKeepsVrAndRaisesVe) {
  // Split the top side of the cube and look at it from above.
  const Mesh cube = load_mesh(test::data_path("cube.off"));
  std::vector<std::uint32_t> top;
  for (std::uint32_t f = 0; f < cube.face_count(); ++f) {
    if (cube.polygon_of(f) == 1) top.push_back(f);
  }
  const Mesh fine = subdivide_faces(cube, top, 2);
  const Vec3 dir = Vec3(0.4, 0.3, 0.866).normalized();
  // Far enough back that the whole top side is inside the frustum.
  CameraOptions far;
  far.distance_factor = 2.0;
  const FaceStats a = rasterize(cube, make_camera(cube, dir, {512, 512}, far));
  const FaceStats b = rasterize(fine, make_camera(fine, dir, {512, 512}, far));
  EXPECT_NEAR(visibility_ratio(b, fine), visibility_ratio(a, cube), 0.01 * visibility_ratio(a, cube));
  EXPECT_GT(viewpoint_entropy(b, fine), viewpoint_entropy(a, cube));
}

TEST(Evaluate, ThreadCountDoesNotChangeResults) {
  const Mesh mesh = load_mesh(test::data_path("airplane.off"));
  const ViewSphere sphere = fibonacci_sphere(64);
  EvaluationOptions one;
  one.resolution = {96, 96};
  one.threads = 1;
  EvaluationOptions many = one;
  many.threads = 4;
  const ModelEvaluation a = evaluate_model(mesh, sphere, one);
  const ModelEvaluation b = evaluate_model(mesh, sphere, many);
  for (auto m : kAllMeasures) {
    EXPECT_EQ(a.map(m).raw, b.map(m).raw);
    EXPECT_EQ(a.map(m).normalized, b.map(m).normalized);
    EXPECT_EQ(a.map(m).best_index, b.map(m).best_index);
  }
  EXPECT_EQ(a.total_pixels, b.total_pixels);
}

TEST(Evaluate, EmptyViewsAreExcluded) {
  // A flat triangle seen exactly edge-on covers no pixels.
  const Mesh tri = Mesh::from_arrays({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
  const ViewSphere sphere({Vec3::UnitZ(), Vec3::UnitX(), Vec3(0, 0.6, 0.8)});
  EvaluationOptions options;
  options.resolution = {64, 64};
  const ModelEvaluation eval = evaluate_model(tri, sphere, options);
  ASSERT_EQ(eval.issues.size(), 1u);
  EXPECT_EQ(eval.issues[0].view, 1u);
  EXPECT_EQ(eval.issues[0].measure, "all");
  for (auto m : kAllMeasures) {
    EXPECT_FALSE(eval.map(m).is_valid(1));
    EXPECT_EQ(eval.map(m).normalized[1], 0.0);
    EXPECT_NE(eval.map(m).best_index, 1u);
    EXPECT_NE(eval.map(m).worst_index, 1u);
  }
  try {
    evaluate_model(tri, ViewSphere({Vec3::UnitX()}), options);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyView);
  }
}

}  // namespace
}  // namespace vqe
