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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "vqe/types.hpp"

namespace vqe {

using Face = std::array<std::uint32_t, 3>;

/// Indexed triangle soup with per-face areas and an axis-aligned bounding
/// box. Immutable once built; every accessor is const.
///
/// Every triangle belongs to a polygon: the source polygon it was
/// fan-triangulated from. Viewpoint measures are defined over polygons, so a
/// quad contributes one term, not two. Meshes built from plain triangles map
/// each face to its own polygon.
///
/// Zero-area faces are kept so face indices line up with the source file;
/// they simply carry an area of 0 and never rasterize to a pixel.
class Mesh {
 public:
  /// Validates and builds a mesh. Throws kEmptyMesh when either array is
  /// empty, kIndex when a face references a missing vertex and kFormat on
  /// non-finite coordinates. `polygon_ids` is either empty (one polygon per
  /// face) or holds one id per face; ids are renumbered densely in order of
  /// first appearance.
  static Mesh from_arrays(std::vector<Vec3> vertices, std::vector<Face> faces,
                          std::vector<std::uint32_t> polygon_ids = {});

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<double>& face_areas() const { return face_areas_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t face_count() const { return faces_.size(); }

  double face_area(std::size_t face) const { return face_areas_[face]; }
  bool is_degenerate(std::size_t face) const { return face_areas_[face] == 0.0; }
  std::size_t degenerate_count() const;

  std::uint32_t polygon_of(std::size_t face) const { return polygon_ids_[face]; }
  const std::vector<std::uint32_t>& polygon_ids() const { return polygon_ids_; }
  std::size_t polygon_count() const { return polygon_areas_.size(); }
  const std::vector<double>& polygon_areas() const { return polygon_areas_; }
  double polygon_area(std::size_t polygon) const { return polygon_areas_[polygon]; }
  /// True when every polygon is a single triangle.
  bool triangles_only() const { return polygon_areas_.size() == faces_.size(); }

  double total_area() const { return total_area_; }
  const Vec3& bbox_min() const { return bbox_min_; }
  const Vec3& bbox_max() const { return bbox_max_; }
  Vec3 bbox_center() const { return 0.5 * (bbox_min_ + bbox_max_); }
  double bbox_diagonal() const { return (bbox_max_ - bbox_min_).norm(); }

 private:
  Mesh() = default;

  std::vector<Vec3> vertices_;
  std::vector<Face> faces_;
  std::vector<double> face_areas_;
  std::vector<std::uint32_t> polygon_ids_;
  std::vector<double> polygon_areas_;
  double total_area_ = 0.0;
  Vec3 bbox_min_ = Vec3::Zero();
  Vec3 bbox_max_ = Vec3::Zero();
};

/// Half the magnitude of the edge cross product.
double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

enum class MeshFormat { kOff, kObj };

/// Reads OFF or OBJ. Polygons are fan-triangulated around their first
/// vertex. Rejects meshes whose total area is zero (kDegenerateGeometry);
/// parse failures report the 1-based line number.
Mesh load_mesh(const std::filesystem::path& path, MeshFormat format);

/// Picks the format from the file extension (.off / .obj, case-insensitive).
Mesh load_mesh(const std::filesystem::path& path);

Mesh parse_off(std::istream& in);
Mesh parse_obj(std::istream& in);

/// OFF with 17 significant digits, so a reload is bit-exact. Runs of faces
/// that form a fan of one polygon are written back as that polygon.
void write_off(const Mesh& mesh, std::ostream& out);
void write_off(const Mesh& mesh, const std::filesystem::path& path);

struct MeshSummary {
  std::size_t vertex_count = 0;
  std::size_t face_count = 0;
  std::size_t polygon_count = 0;
  std::size_t degenerate_count = 0;
  double total_area = 0.0;
  Vec3 bbox_min = Vec3::Zero();
  Vec3 bbox_max = Vec3::Zero();
  double bbox_diagonal = 0.0;
};

MeshSummary mesh_summary(const Mesh& mesh);

/// Applies a linear map to every vertex (rotation augmentation, tests).
Mesh transformed(const Mesh& mesh, const Mat3& linear);

/// Splits each listed face 1-to-4 at its edge midpoints, `levels` times.
/// Untouched faces keep their order; the children of a split face replace it
/// in place and each child becomes a polygon of its own. Used to probe how
/// sensitive each measure is to meshing.
Mesh subdivide_faces(const Mesh& mesh, std::span<const std::uint32_t> faces,
                     int levels = 1);

/// Keeps only the listed faces and drops vertices no kept face references.
/// Surviving vertices keep their relative order and exact coordinates.
Mesh compact_faces(const Mesh& mesh, std::span<const std::uint32_t> keep);

}  // namespace vqe
