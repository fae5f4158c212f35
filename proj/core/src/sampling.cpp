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

#include "vqe/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vqe/errors.hpp"

namespace vqe {

std::size_t ViewSphere::nearest(const Vec3& direction) const {
  std::size_t best = 0;
  double best_dot = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < directions_.size(); ++i) {
    const double d = directions_[i].dot(direction);
    if (d > best_dot) {
      best_dot = d;
      best = i;
    }
  }
  return best;
}

double ViewSphere::mean_spacing() const {
  return std::sqrt(4.0 * kPi / static_cast<double>(directions_.size()));
}

ViewSphere fibonacci_sphere(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::kArgument, "fibonacci_sphere: n must be >= 1");
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const double turn = 2.0 * kPi * (1.0 - 1.0 / golden);
  const double count = static_cast<double>(n);
  std::vector<Vec3> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = turn * static_cast<double>(i);
    points.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return ViewSphere(std::move(points));
}

UniformRng::UniformRng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t UniformRng::next_bits() { return engine_(); }

double UniformRng::next() {
  // Top 53 bits -> [0, 1) with full double resolution.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

SurfaceCloud sample_surface_uniform(const Mesh& mesh, std::size_t k, std::uint64_t seed) {
  if (!(mesh.total_area() > 0.0)) {
    throw Error(ErrorKind::kSampling, "cannot sample a surface whose faces are all degenerate");
  }
  std::vector<double> cumulative(mesh.face_count());
  double running = 0.0;
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    running += mesh.face_area(f);
    cumulative[f] = running;
  }
  UniformRng rng(seed);
  SurfaceCloud cloud;
  cloud.points.reserve(k);
  cloud.source_face.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double target = rng.next() * running;
    // First face whose cumulative area exceeds the target; zero-area faces
    // never satisfy the strict inequality.
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    if (it == cumulative.end()) --it;
    while (mesh.face_area(static_cast<std::size_t>(it - cumulative.begin())) == 0.0) --it;
    const auto face = static_cast<std::uint32_t>(it - cumulative.begin());

    double u = rng.next();
    double v = rng.next();
    if (u + v > 1.0) {
      u = 1.0 - u;
      v = 1.0 - v;
    }
    const auto& [a, b, c] = mesh.faces()[face];
    const Vec3& pa = mesh.vertices()[a];
    cloud.points.push_back(pa + u * (mesh.vertices()[b] - pa) + v * (mesh.vertices()[c] - pa));
    cloud.source_face.push_back(face);
  }
  return cloud;
}

std::vector<std::size_t> farthest_point_indices(std::span<const Vec3> points,
                                                std::size_t m, std::size_t first) {
  if (points.empty()) throw Error(ErrorKind::kArgument, "farthest point sampling on an empty cloud");
  if (m > points.size()) {
    throw Error(ErrorKind::kArgument, "farthest point sampling: m exceeds cloud size");
  }
  if (first >= points.size()) throw Error(ErrorKind::kArgument, "first index out of range");
  std::vector<std::size_t> picked;
  if (m == 0) return picked;
  picked.reserve(m);
  std::vector<double> min_dist(points.size(), std::numeric_limits<double>::infinity());
  std::vector<bool> taken(points.size(), false);
  std::size_t current = first;
  for (std::size_t pick = 0; pick < m; ++pick) {
    picked.push_back(current);
    taken[current] = true;
    if (pick + 1 == m) break;
    std::size_t next = points.size();
    double best = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (taken[i]) continue;
      min_dist[i] = std::min(min_dist[i], (points[i] - points[current]).squaredNorm());
      if (min_dist[i] > best) {
        best = min_dist[i];
        next = i;
      }
    }
    current = next;
  }
  return picked;
}

SurfaceCloud farthest_point_sample(const SurfaceCloud& cloud, std::size_t m, std::uint64_t seed) {
  if (cloud.points.empty()) {
    throw Error(ErrorKind::kArgument, "farthest point sampling on an empty cloud");
  }
  UniformRng rng(seed);
  const auto first = static_cast<std::size_t>(rng.next_bits() % cloud.size());
  SurfaceCloud out;
  for (const auto i : farthest_point_indices(cloud.points, m, first)) {
    out.points.push_back(cloud.points[i]);
    out.source_face.push_back(cloud.source_face.empty() ? 0u : cloud.source_face[i]);
  }
  return out;
}

Mat3 rotation_from_angles(double ax, double ay, double az) {
  const double cx = std::cos(ax), sx = std::sin(ax);
  const double cy = std::cos(ay), sy = std::sin(ay);
  const double cz = std::cos(az), sz = std::sin(az);
  Mat3 rx, ry, rz;
  rx << 1, 0, 0, 0, cx, -sx, 0, sx, cx;
  ry << cy, 0, sy, 0, 1, 0, -sy, 0, cy;
  rz << cz, -sz, 0, sz, cz, 0, 0, 0, 1;
  return rz * ry * rx;
}

Mat3 random_rotation(std::uint64_t seed) {
  UniformRng rng(seed);
  const double ax = 2.0 * kPi * rng.next();
  const double ay = 2.0 * kPi * rng.next();
  const double az = 2.0 * kPi * rng.next();
  return rotation_from_angles(ax, ay, az);
}

}  // namespace vqe
