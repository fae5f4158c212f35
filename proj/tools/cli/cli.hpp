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
#include <iosfwd>
#include <string>
#include <vector>

namespace vqe::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Everything a subcommand needs. Defaults reproduce the standard protocol:
/// 1000 Fibonacci views, 1024x1024 pixels, 90 degree field of view, camera
/// half a bounding-box diagonal from the center.
struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::size_t views = 1000;
  std::uint32_t resolution = 1024;
  double fov_deg = 90.0;
  double distance_factor = 0.5;
  std::vector<std::string> measures = {"VE", "VR", "VKL", "VMI"};
  std::size_t face_warning = 10000;  ///< warn above this many faces

  // Label generation and descent.
  double alpha = 0.99;
  double sigma = 2.0;
  double s = 1.0;
  std::string kernel = "linear";
  std::string scenario = "bimodal";
  std::uint64_t seed = 0;
  std::size_t inits = 100;
  std::size_t steps = 400;
  std::size_t switch_step = 200;
  double learning_rate = 0.05;
  std::vector<double> prediction;

  // Outputs.
  std::string output;
  std::string report;
  std::string trajectory;
  std::string sphere_map;
  std::string projection = "mercator";
  std::uint32_t map_size = 512;
  std::string dump_buffer;
  std::size_t view_index = 0;

  // Point sampling.
  std::size_t points = 10000;
  std::size_t fps_points = 0;
  bool rotate = false;
  std::string point_format = "xyz";

  // Benchmarking.
  std::vector<std::size_t> bench_views = {250, 500, 1000};
  std::vector<std::uint32_t> bench_resolutions = {1024};
  std::size_t runs = 10;

  unsigned threads = 0;  ///< 0: VQE_THREADS, else hardware concurrency
};

int cmd_sample_vq(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_best_view(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate_labels(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_clean_faces(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_labels(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_render(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sample_points(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv, dispatches and maps failures to exit codes. Data goes to
/// `out`; logs and the one-line JSON error go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vqe::cli
