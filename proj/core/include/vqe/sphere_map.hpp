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
#include <vector>

#include "vqe/measures.hpp"
#include "vqe/sampling.hpp"

namespace vqe {

/// z is the pole; longitude runs from -pi at the left edge to pi at the right.
enum class Projection { kMercator, kEquirectangular };

/// Latitude limit of the Mercator projection, degrees.
inline constexpr double kMercatorLatitudeLimit = 85.0;

struct SphereImage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<double> values;  ///< row-major, row 0 at the north edge

  double at(std::uint32_t x, std::uint32_t y) const {
    return values[static_cast<std::size_t>(y) * width + x];
  }
};

/// Mercator images are size x size; equirectangular ones size x size/2.
std::uint32_t projection_height(Projection projection, std::uint32_t size);

/// Unit direction through the center of pixel (x, y).
Vec3 pixel_direction(Projection projection, std::uint32_t size, std::uint32_t x,
                     std::uint32_t y);

/// Each pixel takes the normalized value of the nearest sphere view.
/// Throws kArgument for size 0 or a map that does not match the sphere.
SphereImage render_sphere_map(const VQMap& map, const ViewSphere& sphere,
                              Projection projection, std::uint32_t size);

/// Binary PGM, gray = round(255 * value).
void write_pgm(const SphereImage& image, const std::filesystem::path& path);

void export_sphere_map(const VQMap& map, const ViewSphere& sphere,
                       const std::filesystem::path& path, Projection projection,
                       std::uint32_t size);

/// 4-connected regions of pixels with value > threshold. Regions touching the
/// left and right edges are joined, since longitude wraps.
std::size_t count_components(const SphereImage& image, double threshold);

}  // namespace vqe
