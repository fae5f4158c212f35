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

#include "vqe/sphere_map.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "vqe/errors.hpp"

namespace vqe {

std::uint32_t projection_height(Projection projection, std::uint32_t size) {
  if (projection == Projection::kMercator) return size;
  return std::max<std::uint32_t>(1, size / 2);
}

Vec3 pixel_direction(Projection projection, std::uint32_t size, std::uint32_t x,
                     std::uint32_t y) {
  const std::uint32_t height = projection_height(projection, size);
  const double lon = -kPi + 2.0 * kPi * (x + 0.5) / size;
  const double t = (y + 0.5) / height;  // 0 at the north edge
  double lat = 0.0;
  if (projection == Projection::kMercator) {
    const double limit = kMercatorLatitudeLimit * kPi / 180.0;
    const double y_max = std::log(std::tan(kPi / 4.0 + limit / 2.0));
    lat = std::atan(std::sinh(y_max * (1.0 - 2.0 * t)));
  } else {
    lat = kPi / 2.0 - kPi * t;
  }
  return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

SphereImage render_sphere_map(const VQMap& map, const ViewSphere& sphere,
                              Projection projection, std::uint32_t size) {
  if (size == 0) throw Error(ErrorKind::kArgument, "image size must be positive");
  if (map.normalized.size() != sphere.size() || sphere.size() == 0) {
    throw Error(ErrorKind::kArgument, "quality map and view sphere sizes differ");
  }
  SphereImage image;
  image.width = size;
  image.height = projection_height(projection, size);
  image.values.resize(static_cast<std::size_t>(image.width) * image.height);
  for (std::uint32_t y = 0; y < image.height; ++y) {
    for (std::uint32_t x = 0; x < image.width; ++x) {
      const Vec3 d = pixel_direction(projection, size, x, y);
      image.values[static_cast<std::size_t>(y) * image.width + x] =
          map.normalized[sphere.nearest(d)];
    }
  }
  return image;
}

void write_pgm(const SphereImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  std::vector<unsigned char> bytes(image.values.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = static_cast<unsigned char>(std::lround(255.0 * std::clamp(image.values[i], 0.0, 1.0)));
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path.string());
}

void export_sphere_map(const VQMap& map, const ViewSphere& sphere,
                       const std::filesystem::path& path, Projection projection,
                       std::uint32_t size) {
  write_pgm(render_sphere_map(map, sphere, projection, size), path);
}

std::size_t count_components(const SphereImage& image, double threshold) {
  const std::size_t w = image.width, h = image.height;
  std::vector<std::size_t> parent(w * h);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  auto bright = [&](std::size_t i) { return image.values[i] > threshold; };
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t i = y * w + x;
      if (!bright(i)) continue;
      const std::size_t right = y * w + (x + 1) % w;
      if (bright(right)) unite(i, right);
      if (y + 1 < h && bright(i + w)) unite(i, i + w);
    }
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < w * h; ++i) count += bright(i) && find(i) == i;
  return count;
}

}  // namespace vqe
