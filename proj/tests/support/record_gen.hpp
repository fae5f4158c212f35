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

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

#include "vqe/dataset.hpp"

namespace vqe::test {

/// Raw values that stress decimal round-tripping: wide exponents,
/// subnormals, signed zeros, integers and excluded (NaN) views.
inline double awkward_double(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(-300, 300);
  switch (pick(rng)) {
    case 0: return std::numeric_limits<double>::quiet_NaN();
    case 1: return -0.0;
    case 2: return std::numeric_limits<double>::denorm_min() * static_cast<double>(rng() % 1000 + 1);
    case 3: return std::ldexp(unit(rng), exponent(rng) * 3);
    case 4: return std::round(unit(rng) * 1e6);
    case 5: return 1.0 / 3.0 * unit(rng);
    default: return unit(rng) * std::pow(10.0, exponent(rng) / 30);
  }
}

/// A record that passes validate_record, with random content.
inline ModelRecord random_record(std::uint64_t seed, std::size_t sphere_size) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ModelRecord r;
  r.model_id = "model_" + std::to_string(seed) + (seed % 2 ? " \"quoted\"\\path\t\u00e9" : "");
  r.sphere_size = sphere_size;
  r.camera.resolution = {static_cast<std::uint32_t>(64 + rng() % 2000),
                         static_cast<std::uint32_t>(64 + rng() % 2000)};
  r.camera.vertical_fov_deg = 30.0 + 120.0 * unit(rng);
  r.camera.distance_factor = 0.1 + 3.0 * unit(rng);
  for (std::size_t m = 0; m < 4; ++m) {
    MeasureRecord& mr = r.measures[m];
    mr.measure = static_cast<Measure>(m);
    mr.orientation = orientation_of(mr.measure);
    for (std::size_t i = 0; i < sphere_size; ++i) {
      const double raw = awkward_double(rng);
      mr.raw.push_back(raw);
      mr.normalized.push_back(std::isnan(raw) ? 0.0 : unit(rng));
    }
    mr.best_index = rng() % sphere_size;
    mr.worst_index = (mr.best_index + 1 + rng() % (sphere_size - 1)) % sphere_size;
    mr.normalized[mr.best_index] = 1.0;
    mr.normalized[mr.worst_index] = 0.0;
  }
  return r;
}

}  // namespace vqe::test
