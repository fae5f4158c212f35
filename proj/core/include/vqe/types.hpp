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

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cstdint>

namespace vqe {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;

/// Version string stamped into every dataset record.
inline constexpr const char* kEngineVersion = "1.0.0";

struct Resolution {
  std::uint32_t width = 1024;
  std::uint32_t height = 1024;

  std::uint64_t pixel_count() const {
    return static_cast<std::uint64_t>(width) * height;
  }
  friend bool operator==(const Resolution&, const Resolution&) = default;
};

}  // namespace vqe
