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

#include <cstdint>
#include <filesystem>
#include <vector>

#include "vqe/mesh.hpp"
#include "vqe/types.hpp"

namespace vqe {

/// Camera placement protocol. The defaults place the eye half a bounding-box
/// diagonal from the box center with a 90 degree vertical field of view.
struct CameraOptions {
  double vertical_fov = kPi / 2.0;  ///< radians, in (0, pi)
  double distance_factor = 0.5;     ///< eye distance in bbox diagonals
};

struct Camera {
  Vec3 eye = Vec3::Zero();
  Vec3 target = Vec3::Zero();
  Vec3 up = Vec3::UnitY();
  double vertical_fov = kPi / 2.0;
  Resolution resolution;
  double near_plane = 0.0;
  double far_plane = 0.0;
};

/// eye = center + distance_factor * diagonal * view_dir, looking at the bbox
/// center. Up is +y unless |view_dir . y| > 0.99, then +x. near = 1e-3 *
/// diagonal, far = (distance_factor + 3.5) * diagonal (4 diagonals at the
/// default distance). Throws kArgument for a non-unit view_dir or a bad field
/// of view, kDegenerateGeometry for a zero-diagonal bounding box.
Camera make_camera(const Mesh& mesh, const Vec3& view_dir, Resolution resolution,
                   const CameraOptions& options = {});

/// Per-face pixel ownership for one view after depth resolution.
struct FaceStats {
  std::vector<std::uint32_t> pixel_counts;  ///< a_z(v) per triangle
  std::uint64_t total_pixels = 0;           ///< a_t(v)
  std::uint32_t clipped_faces = 0;          ///< faces cut by the view frustum

  bool visible(std::size_t face) const { return pixel_counts[face] > 0; }
  std::size_t visible_count() const;
};

/// Face index per pixel, row-major, row 0 at the top; -1 is background.
struct ItemBuffer {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::int32_t> ids;

  std::int32_t at(std::uint32_t x, std::uint32_t y) const {
    return ids[static_cast<std::size_t>(y) * width + x];
  }
};

namespace detail {

/// Inverse depth over a snapped screen triangle, affine in sub-pixel
/// coordinates. Faces sharing a snapped edge agree on it up to rounding.
struct DepthPlane {
  double z0, gx, gy;
  std::int64_t x0, y0;

  double at(double px, double py) const {
    return z0 + gx * (px - static_cast<double>(x0)) + gy * (py - static_cast<double>(y0));
  }
};

struct ScreenVertex {
  std::int64_t x, y;  ///< sub-pixel fixed point, y grows downwards
  double inv_depth;
};

}  // namespace detail

/// Item-buffer rasterizer. Triangles are clipped in view space, snapped to
/// 1/256 pixel, scan-converted with a top-left fill rule and depth-tested
/// on interpolated inverse depth. Where two faces meet at a pixel center (a
/// shared silhouette edge) the face that is nearer just inside the incoming
/// triangle wins; exact ties keep the earlier face, so the lower index wins.
/// No backface culling.
///
/// An instance owns its scratch buffers; reuse it across views, and give
/// each thread its own instance.
class Rasterizer {
 public:
  /// Renders and returns the internal item buffer (valid until the next call).
  const ItemBuffer& render(const Mesh& mesh, const Camera& camera);

  /// Renders and reduces the item buffer to per-face pixel counts.
  FaceStats rasterize(const Mesh& mesh, const Camera& camera);

 private:
  ItemBuffer items_;
  std::vector<double> inv_depth_;
  std::vector<Vec3> view_vertices_;
  std::vector<detail::ScreenVertex> screen_vertices_;
  std::vector<std::uint8_t> outcodes_;  ///< bit p set: outside frustum plane p
  std::vector<detail::DepthPlane> planes_;
  std::vector<std::uint32_t> pixel_plane_;
  std::uint32_t clipped_faces_ = 0;
};

/// Single-shot convenience wrapper.
FaceStats rasterize(const Mesh& mesh, const Camera& camera);

/// Debug dump: binary PGM, face index modulo 255, background 255.
void write_item_buffer_pgm(const ItemBuffer& buffer, const std::filesystem::path& path);

}  // namespace vqe
