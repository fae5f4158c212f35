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
#include <random>
#include <span>
#include <vector>

#include "vqe/mesh.hpp"
#include "vqe/types.hpp"

namespace vqe {

/// Ordered set of candidate view directions on the unit sphere.
class ViewSphere {
 public:
  explicit ViewSphere(std::vector<Vec3> directions) : directions_(std::move(directions)) {}

  std::size_t size() const { return directions_.size(); }
  const Vec3& operator[](std::size_t i) const { return directions_[i]; }
  const std::vector<Vec3>& directions() const { return directions_; }

  /// Index of the direction with the largest dot product (smallest
  /// geodesic distance); ties go to the lower index.
  std::size_t nearest(const Vec3& direction) const;

  /// sqrt(4 pi / n): the expected spacing of n well-spread points.
  double mean_spacing() const;

 private:
  std::vector<Vec3> directions_;
};

/// Offset-by-half Fibonacci lattice: z_i = 1 - 2(i + 0.5)/n, golden-angle
/// azimuth. Pure function of n; throws kArgument for n == 0.
ViewSphere fibonacci_sphere(std::size_t n);

struct SurfaceCloud {
  std::vector<Vec3> points;
  std::vector<std::uint32_t> source_face;

  std::size_t size() const { return points.size(); }
};

/// Deterministic stream of uniform doubles in [0, 1) built on mt19937_64,
/// independent of the standard library's distribution implementations.
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed);
  double next();
  std::uint64_t next_bits();

 private:
  std::mt19937_64 engine_;
};

/// k points, faces picked with probability A_z / A_t and positions uniform
/// within the face (reflected barycentric sampling). Throws kSampling when
/// every face is degenerate.
SurfaceCloud sample_surface_uniform(const Mesh& mesh, std::size_t k, std::uint64_t seed);

/// Greedy farthest point sampling from an explicit first index. Each later
/// pick maximises the distance to the already chosen set; ties go to the
/// lowest index. Returns indices into `points` in pick order.
std::vector<std::size_t> farthest_point_indices(std::span<const Vec3> points,
                                                std::size_t m, std::size_t first);

/// Farthest point sampling whose first point is drawn from `seed`.
SurfaceCloud farthest_point_sample(const SurfaceCloud& cloud, std::size_t m,
                                   std::uint64_t seed);

/// R = Rz(az) * Ry(ay) * Rx(ax).
Mat3 rotation_from_angles(double ax, double ay, double az);

/// Three independent angles uniform on [0, 2 pi) fed to rotation_from_angles.
/// Not Haar-uniform on SO(3).
Mat3 random_rotation(std::uint64_t seed);

// Point cloud interchange.
void write_xyz(const SurfaceCloud& cloud, const std::filesystem::path& path);
std::vector<Vec3> read_xyz(const std::filesystem::path& path);

/// Binary layout: uint32 count, then count * 3 float32, all little-endian.
void write_cloud_binary(const SurfaceCloud& cloud, const std::filesystem::path& path);
std::vector<Vec3> read_cloud_binary(const std::filesystem::path& path);

}  // namespace vqe
