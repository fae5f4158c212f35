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

#include <span>

#include "vqe/mesh.hpp"

namespace vqe::primitives {

/// Axis-aligned box with outward-wound faces, 12 triangles.
Mesh box(const Vec3& lo, const Vec3& hi);

/// The unit cube [0,1]^3.
Mesh unit_cube();

/// Box `inner` (shrunk by `inset` on every side) inside box [0,1]^3: the
/// first 12 faces are the outer cube, the next 12 the occluded inner one.
Mesh nested_cubes(double inset = 0.25);

/// Icosahedron refined `subdivisions` times and pushed onto the sphere:
/// 20 * 4^subdivisions faces.
Mesh icosphere(int subdivisions, double radius = 1.0);

/// Torus around +z with `major_segments * minor_segments * 2` faces.
Mesh torus(int major_segments, int minor_segments, double major_radius = 1.0,
           double minor_radius = 0.3);

/// Concatenates meshes, offsetting face indices.
Mesh merge(std::span<const Mesh> parts);

}  // namespace vqe::primitives
