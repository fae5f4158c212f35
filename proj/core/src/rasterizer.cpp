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

#include "vqe/rasterizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <string>

#include "vqe/errors.hpp"

namespace vqe {
namespace {

constexpr std::int64_t kSubpixel = 256;  // 8 bits of sub-pixel precision
constexpr std::int64_t kHalfPixel = kSubpixel / 2;
// Side planes sit this many half-widths out; the viewport scissor does the
// exact cut. This only bounds snapped coordinates.
constexpr double kGuardBand = 2.0;
constexpr int kPlaneCount = 6;
// A triangle clipped by 6 planes has at most 9 vertices.
constexpr std::size_t kMaxClipVertices = 12;

struct ViewVertex {
  double x, y, d;  // right, up, depth along the viewing direction
};

using detail::DepthPlane;
using detail::ScreenVertex;

DepthPlane plane_of(const ScreenVertex& a, const ScreenVertex& b, const ScreenVertex& c,
                    std::int64_t area) {
  const double inv = 1.0 / static_cast<double>(area);
  const double gx = -(static_cast<double>(c.y - b.y) * a.inv_depth +
                      static_cast<double>(a.y - c.y) * b.inv_depth +
                      static_cast<double>(b.y - a.y) * c.inv_depth) * inv;
  const double gy = (static_cast<double>(c.x - b.x) * a.inv_depth +
                     static_cast<double>(a.x - c.x) * b.inv_depth +
                     static_cast<double>(b.x - a.x) * c.inv_depth) * inv;
  return {a.inv_depth, gx, gy, a.x, a.y};
}

// Relative inverse-depth gap below which two faces are treated as meeting
// at the pixel, typically a pixel center on a shared silhouette edge.
constexpr double kDepthTie = 1e-9;

struct Frustum {
  double near_plane, far_plane, guard_x, guard_y;

  double distance(const ViewVertex& v, int plane) const {
    switch (plane) {
      case 0: return v.d - near_plane;
      case 1: return far_plane - v.d;
      case 2: return v.x + guard_x * v.d;
      case 3: return guard_x * v.d - v.x;
      case 4: return v.y + guard_y * v.d;
      default: return guard_y * v.d - v.y;
    }
  }
};

struct ClipPolygon {
  std::array<ViewVertex, kMaxClipVertices> v;
  std::size_t n = 0;
};

// Sutherland-Hodgman against one plane. Crossing points are always computed
// from the inside endpoint toward the outside one, so an edge shared by two
// triangles is cut at bit-identical points in both.
void clip_against(const ClipPolygon& in, ClipPolygon& out, const Frustum& frustum, int plane) {
  out.n = 0;
  for (std::size_t i = 0; i < in.n; ++i) {
    const ViewVertex& cur = in.v[i];
    const ViewVertex& nxt = in.v[(i + 1) % in.n];
    const double dc = frustum.distance(cur, plane);
    const double dn = frustum.distance(nxt, plane);
    const bool cur_in = dc >= 0.0;
    const bool nxt_in = dn >= 0.0;
    if (cur_in) out.v[out.n++] = cur;
    if (cur_in != nxt_in) {
      const ViewVertex& inside = cur_in ? cur : nxt;
      const ViewVertex& outside = cur_in ? nxt : cur;
      const double di = cur_in ? dc : dn;
      const double dout = cur_in ? dn : dc;
      const double t = di / (di - dout);
      out.v[out.n++] = {inside.x + t * (outside.x - inside.x),
                        inside.y + t * (outside.y - inside.y),
                        inside.d + t * (outside.d - inside.d)};
    }
  }
}

std::int64_t edge(const ScreenVertex& u, const ScreenVertex& v, std::int64_t px, std::int64_t py) {
  return (v.x - u.x) * (py - u.y) - (v.y - u.y) * (px - u.x);
}

bool is_top_left(const ScreenVertex& u, const ScreenVertex& v) {
  const std::int64_t dy = v.y - u.y;
  const std::int64_t dx = v.x - u.x;
  return dy < 0 || (dy == 0 && dx > 0);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  return a >= 0 ? a / b : -((-a + b - 1) / b);
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t signed_area(const ScreenVertex& a, const ScreenVertex& b, const ScreenVertex& c) {
  return edge(a, b, c.x, c.y);
}

struct RenderTarget {
  ItemBuffer& items;
  std::vector<double>& inv_depth;
  std::vector<DepthPlane>& planes;         // one per drawn triangle
  std::vector<std::uint32_t>& pixel_plane;  // plane of each pixel's owner
};

void draw_triangle(ScreenVertex a, ScreenVertex b, ScreenVertex c, std::int32_t face,
                   RenderTarget& target) {
  std::int64_t area = signed_area(a, b, c);
  if (area == 0) return;
  if (area < 0) {
    std::swap(b, c);
    area = -area;
  }
  ItemBuffer& items = target.items;
  const std::int64_t width = items.width;
  const std::int64_t height = items.height;
  const std::int64_t min_x = std::min({a.x, b.x, c.x});
  const std::int64_t max_x = std::max({a.x, b.x, c.x});
  const std::int64_t min_y = std::min({a.y, b.y, c.y});
  const std::int64_t max_y = std::max({a.y, b.y, c.y});
  const std::int64_t x0 = std::max<std::int64_t>(0, ceil_div(min_x - kHalfPixel, kSubpixel));
  const std::int64_t x1 = std::min<std::int64_t>(width - 1, floor_div(max_x - kHalfPixel, kSubpixel));
  const std::int64_t y0 = std::max<std::int64_t>(0, ceil_div(min_y - kHalfPixel, kSubpixel));
  const std::int64_t y1 = std::min<std::int64_t>(height - 1, floor_div(max_y - kHalfPixel, kSubpixel));
  if (x0 > x1 || y0 > y1) return;

  const auto plane_index = static_cast<std::uint32_t>(target.planes.size());
  target.planes.push_back(plane_of(a, b, c, area));
  const DepthPlane& plane = target.planes.back();
  const double cx = static_cast<double>(a.x + b.x + c.x) / 3.0;
  const double cy = static_cast<double>(a.y + b.y + c.y) / 3.0;

  // w0 weights a (edge b->c), w1 weights b (edge c->a), w2 weights c (edge a->b).
  const std::int64_t bias0 = is_top_left(b, c) ? 0 : -1;
  const std::int64_t bias1 = is_top_left(c, a) ? 0 : -1;
  const std::int64_t bias2 = is_top_left(a, b) ? 0 : -1;
  const std::int64_t step_x0 = -(c.y - b.y) * kSubpixel, step_y0 = (c.x - b.x) * kSubpixel;
  const std::int64_t step_x1 = -(a.y - c.y) * kSubpixel, step_y1 = (a.x - c.x) * kSubpixel;
  const std::int64_t step_x2 = -(b.y - a.y) * kSubpixel, step_y2 = (b.x - a.x) * kSubpixel;
  const std::int64_t px = x0 * kSubpixel + kHalfPixel;
  const std::int64_t py = y0 * kSubpixel + kHalfPixel;
  std::int64_t row0 = edge(b, c, px, py);
  std::int64_t row1 = edge(c, a, px, py);
  std::int64_t row2 = edge(a, b, px, py);

  for (std::int64_t y = y0; y <= y1; ++y) {
    std::int64_t w0 = row0, w1 = row1, w2 = row2;
    const std::size_t row_offset = static_cast<std::size_t>(y * width);
    const double sy = static_cast<double>(y * kSubpixel + kHalfPixel);
    for (std::int64_t x = x0; x <= x1; ++x) {
      if ((w0 + bias0) >= 0 && (w1 + bias1) >= 0 && (w2 + bias2) >= 0) {
        const double sx = static_cast<double>(x * kSubpixel + kHalfPixel);
        const double z = plane.at(sx, sy);
        const std::size_t idx = row_offset + static_cast<std::size_t>(x);
        const double current = target.inv_depth[idx];
        // Larger inverse depth is closer; strict compare keeps the earlier face.
        bool wins = z > current;
        const std::int32_t owner = items.ids[idx];
        if (owner >= 0 && std::abs(z - current) <= kDepthTie * std::max(z, current)) {
          // The faces meet here; the order just inside this triangle decides.
          const DepthPlane& other = target.planes[target.pixel_plane[idx]];
          const double mine = plane.at(cx, cy);
          const double theirs = other.at(cx, cy);
          wins = mine > theirs && mine - theirs > kDepthTie * std::abs(mine);
        }
        if (wins) {
          target.inv_depth[idx] = z;
          items.ids[idx] = face;
          target.pixel_plane[idx] = plane_index;
        }
      }
      w0 += step_x0;
      w1 += step_x1;
      w2 += step_x2;
    }
    row0 += step_y0;
    row1 += step_y1;
    row2 += step_y2;
  }
}

}  // namespace

Camera make_camera(const Mesh& mesh, const Vec3& view_dir, Resolution resolution,
                   const CameraOptions& options) {
  if (std::abs(view_dir.norm() - 1.0) > 1e-6) {
    throw Error(ErrorKind::kArgument, "view direction must be a unit vector");
  }
  if (!(options.vertical_fov > 0.0 && options.vertical_fov < kPi)) {
    throw Error(ErrorKind::kArgument, "vertical field of view must lie in (0, pi)");
  }
  if (!(options.distance_factor > 0.0)) {
    throw Error(ErrorKind::kArgument, "camera distance factor must be positive");
  }
  const double diagonal = mesh.bbox_diagonal();
  if (!(diagonal > 0.0)) {
    throw Error(ErrorKind::kDegenerateGeometry, "bounding box diagonal is zero");
  }
  Camera camera;
  camera.target = mesh.bbox_center();
  camera.eye = camera.target + options.distance_factor * diagonal * view_dir;
  camera.up = std::abs(view_dir.y()) > 0.99 ? Vec3::UnitX() : Vec3::UnitY();
  camera.vertical_fov = options.vertical_fov;
  camera.resolution = resolution;
  camera.near_plane = 1e-3 * diagonal;
  camera.far_plane = (options.distance_factor + 3.5) * diagonal;
  return camera;
}

std::size_t FaceStats::visible_count() const {
  return static_cast<std::size_t>(
      std::count_if(pixel_counts.begin(), pixel_counts.end(), [](auto c) { return c > 0; }));
}

const ItemBuffer& Rasterizer::render(const Mesh& mesh, const Camera& camera) {
  const auto [width, height] = camera.resolution;
  if (width == 0 || height == 0) {
    throw Error(ErrorKind::kArgument, "render resolution must be nonzero");
  }
  const Vec3 forward = (camera.target - camera.eye).normalized();
  const Vec3 right = forward.cross(camera.up).normalized();
  const Vec3 up = right.cross(forward);
  if (!right.allFinite() || !(camera.near_plane > 0.0 && camera.near_plane < camera.far_plane)) {
    throw Error(ErrorKind::kArgument, "invalid camera");
  }

  const std::size_t pixels = static_cast<std::size_t>(width) * height;
  items_.width = width;
  items_.height = height;
  items_.ids.assign(pixels, -1);
  inv_depth_.assign(pixels, 0.0);
  clipped_faces_ = 0;

  view_vertices_.resize(mesh.vertex_count());
  for (std::size_t i = 0; i < mesh.vertex_count(); ++i) {
    const Vec3 rel = mesh.vertices()[i] - camera.eye;
    view_vertices_[i] = Vec3(right.dot(rel), up.dot(rel), forward.dot(rel));
  }

  const double tan_y = std::tan(0.5 * camera.vertical_fov);
  const double tan_x = tan_y * static_cast<double>(width) / static_cast<double>(height);
  const Frustum frustum{camera.near_plane, camera.far_plane, kGuardBand * tan_x,
                        kGuardBand * tan_y};
  const double half_w = 0.5 * static_cast<double>(width);
  const double half_h = 0.5 * static_cast<double>(height);

  auto project = [&](const ViewVertex& v) {
    const double sx = (v.x / (v.d * tan_x) + 1.0) * half_w;
    const double sy = (1.0 - v.y / (v.d * tan_y)) * half_h;
    return ScreenVertex{std::llround(sx * kSubpixel), std::llround(sy * kSubpixel), 1.0 / v.d};
  };
  screen_vertices_.resize(mesh.vertex_count());
  outcodes_.resize(mesh.vertex_count());
  for (std::size_t i = 0; i < mesh.vertex_count(); ++i) {
    const Vec3& p = view_vertices_[i];
    const ViewVertex v{p.x(), p.y(), p.z()};
    std::uint8_t code = 0;
    for (int plane = 0; plane < kPlaneCount; ++plane) {
      code |= static_cast<std::uint8_t>((frustum.distance(v, plane) < 0.0) << plane);
    }
    outcodes_[i] = code;
    if (code == 0) screen_vertices_[i] = project(v);
  }
  planes_.clear();
  pixel_plane_.assign(pixels, 0);
  RenderTarget target{items_, inv_depth_, planes_, pixel_plane_};

  ClipPolygon poly, scratch;
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    if (mesh.is_degenerate(f)) continue;
    const auto& face = mesh.faces()[f];
    const std::uint8_t c0 = outcodes_[face[0]], c1 = outcodes_[face[1]], c2 = outcodes_[face[2]];
    if ((c0 & c1 & c2) != 0) continue;
    if ((c0 | c1 | c2) == 0) {
      draw_triangle(screen_vertices_[face[0]], screen_vertices_[face[1]],
                    screen_vertices_[face[2]], static_cast<std::int32_t>(f), target);
      continue;
    }
    ++clipped_faces_;
    poly.n = 3;
    for (int k = 0; k < 3; ++k) {
      const Vec3& p = view_vertices_[face[k]];
      poly.v[k] = {p.x(), p.y(), p.z()};
    }
    for (int plane = 0; plane < kPlaneCount && poly.n >= 3; ++plane) {
      clip_against(poly, scratch, frustum, plane);
      std::swap(poly, scratch);
    }
    if (poly.n < 3) continue;
    std::array<ScreenVertex, kMaxClipVertices> screen;
    for (std::size_t k = 0; k < poly.n; ++k) screen[k] = project(poly.v[k]);
    for (std::size_t k = 1; k + 1 < poly.n; ++k) {
      draw_triangle(screen[0], screen[k], screen[k + 1], static_cast<std::int32_t>(f), target);
    }
  }
  return items_;
}

FaceStats Rasterizer::rasterize(const Mesh& mesh, const Camera& camera) {
  const ItemBuffer& items = render(mesh, camera);
  FaceStats stats;
  stats.pixel_counts.assign(mesh.face_count(), 0);
  for (const auto id : items.ids) {
    if (id >= 0) ++stats.pixel_counts[static_cast<std::size_t>(id)];
  }
  for (const auto c : stats.pixel_counts) stats.total_pixels += c;
  stats.clipped_faces = clipped_faces_;
  return stats;
}

FaceStats rasterize(const Mesh& mesh, const Camera& camera) {
  Rasterizer rasterizer;
  return rasterizer.rasterize(mesh, camera);
}

void write_item_buffer_pgm(const ItemBuffer& buffer, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << "P5\n" << buffer.width << ' ' << buffer.height << "\n255\n";
  std::vector<unsigned char> row(buffer.width);
  for (std::uint32_t y = 0; y < buffer.height; ++y) {
    for (std::uint32_t x = 0; x < buffer.width; ++x) {
      const auto id = buffer.at(x, y);
      row[x] = static_cast<unsigned char>(id < 0 ? 255 : id % 255);
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

}  // namespace vqe
