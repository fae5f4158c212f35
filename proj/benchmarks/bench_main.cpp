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

#include <benchmark/benchmark.h>

#include "vqe/labelgen.hpp"
#include "vqe/measures.hpp"
#include "vqe/primitives.hpp"
#include "vqe/rasterizer.hpp"
#include "vqe/sampling.hpp"

namespace {

void BM_Rasterize(benchmark::State& state) {
  const vqe::Mesh mesh = vqe::primitives::torus(100, 50);
  const auto res = static_cast<std::uint32_t>(state.range(0));
  const vqe::Camera camera = vqe::make_camera(mesh, vqe::Vec3(0.3, 0.4, 0.87).normalized(), {res, res});
  vqe::Rasterizer r;
  for (auto _ : state) benchmark::DoNotOptimize(r.rasterize(mesh, camera).total_pixels);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(res) * res);
}
BENCHMARK(BM_Rasterize)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_EvaluateModel(benchmark::State& state) {
  const vqe::Mesh mesh = vqe::primitives::torus(50, 10);
  const vqe::ViewSphere sphere = vqe::fibonacci_sphere(static_cast<std::size_t>(state.range(0)));
  vqe::EvaluationOptions options;
  options.resolution = {256, 256};
  options.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(vqe::evaluate_model(mesh, sphere, options).maps[0].best_index);
}
BENCHMARK(BM_EvaluateModel)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_GlTarget(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const vqe::ViewSphere sphere = vqe::fibonacci_sphere(n);
  std::vector<double> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = sphere[i].z();
  const vqe::VQMap map = vqe::normalize_map(raw, vqe::Orientation::kMaxIsBest);
  const vqe::Vec3 pred = vqe::Vec3(0.2, -0.5, 0.3).normalized();
  for (auto _ : state) benchmark::DoNotOptimize(vqe::gl_target(pred, map, sphere).index);
}
BENCHMARK(BM_GlTarget)->Arg(1000)->Arg(10000);

void BM_FibonacciSphere(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(vqe::fibonacci_sphere(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_FibonacciSphere)->Arg(1000);

}  // namespace
BENCHMARK_MAIN();
