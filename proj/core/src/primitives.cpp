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

#include "vqe/primitives.hpp"

#include <cmath>
#include <map>
#include <utility>
#include <vector>

namespace vqe::primitives {

Mesh box(const Vec3& lo, const Vec3& hi) {
  std::vector<Vec3> v;
  for (int i = 0; i < 8; ++i) {
    v.emplace_back(i & 1 ? hi.x() : lo.x(), i & 2 ? hi.y() : lo.y(),
                   i & 4 ? hi.z() : lo.z());
  }
  // Two triangles per side, counter-clockwise seen from outside.
  std::vector<Face> f = {
      {0, 2, 3}, {0, 3, 1},  // -z
      {4, 5, 7}, {4, 7, 6},  // +z
      {0, 1, 5}, {0, 5, 4},  // -y
      {2, 6, 7}, {2, 7, 3},  // +y
      {0, 4, 6}, {0, 6, 2},  // -x
      {1, 3, 7}, {1, 7, 5},  // +x
  };
  // One polygon per side, like a quad-faced OFF cube.
  std::vector<std::uint32_t> sides = {0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5};
  return Mesh::from_arrays(std::move(v), std::move(f), std::move(sides));
}

Mesh unit_cube() { return box(Vec3::Zero(), Vec3::Ones()); }

Mesh nested_cubes(double inset) {
  const Mesh parts[] = {unit_cube(), box(Vec3::Constant(inset), Vec3::Constant(1.0 - inset))};
  return merge(parts);
}

Mesh icosphere(int subdivisions, double radius) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
      {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1},
  };
  for (auto& p : v) p.normalize();
  std::vector<Face> f = {
      {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
      {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
      {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1},
  };
  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> cache;
    auto mid = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::minmax(a, b);
      if (auto it = cache.find(key); it != cache.end()) return it->second;
      const auto index = static_cast<std::uint32_t>(v.size());
      v.push_back((v[a] + v[b]).normalized());
      cache.emplace(key, index);
      return index;
    };
    std::vector<Face> next;
    next.reserve(f.size() * 4);
    for (const auto& [a, b, c] : f) {
      const auto ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
      next.push_back({a, ab, ca});
      next.push_back({b, bc, ab});
      next.push_back({c, ca, bc});
      next.push_back({ab, bc, ca});
    }
    f = std::move(next);
  }
  for (auto& p : v) p *= radius;
  return Mesh::from_arrays(std::move(v), std::move(f));
}

Mesh torus(int major_segments, int minor_segments, double major_radius,
           double minor_radius) {
  std::vector<Vec3> v;
  std::vector<Face> f;
  const auto n = static_cast<std::uint32_t>(major_segments);
  const auto m = static_cast<std::uint32_t>(minor_segments);
  for (std::uint32_t i = 0; i < n; ++i) {
    const double u = 2.0 * kPi * i / n;
    for (std::uint32_t j = 0; j < m; ++j) {
      const double w = 2.0 * kPi * j / m;
      const double r = major_radius + minor_radius * std::cos(w);
      v.emplace_back(r * std::cos(u), r * std::sin(u), minor_radius * std::sin(w));
    }
  }
  auto id = [&](std::uint32_t i, std::uint32_t j) { return (i % n) * m + (j % m); };
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < m; ++j) {
      f.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      f.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return Mesh::from_arrays(std::move(v), std::move(f));
}

Mesh merge(std::span<const Mesh> parts) {
  std::vector<Vec3> v;
  std::vector<Face> f;
  std::vector<std::uint32_t> polygons;
  std::uint32_t polygon_offset = 0;
  for (const auto& part : parts) {
    const auto offset = static_cast<std::uint32_t>(v.size());
    v.insert(v.end(), part.vertices().begin(), part.vertices().end());
    for (std::size_t i = 0; i < part.face_count(); ++i) {
      const auto& face = part.faces()[i];
      f.push_back({face[0] + offset, face[1] + offset, face[2] + offset});
      polygons.push_back(part.polygon_of(i) + polygon_offset);
    }
    polygon_offset += static_cast<std::uint32_t>(part.polygon_count());
  }
  return Mesh::from_arrays(std::move(v), std::move(f), std::move(polygons));
}

}  // namespace vqe::primitives
