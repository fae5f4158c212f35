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

#include "vqe/mesh.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include "vqe/errors.hpp"

namespace vqe {
namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

[[noreturn]] void fail_at(std::size_t line_no, const std::string& what) {
  throw Error(ErrorKind::kFormat, "line " + std::to_string(line_no) + ": " + what);
}

double parse_double(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    fail_at(line_no, "expected a number, got '" + std::string(token) + "'");
  }
  return value;
}

long long parse_integer(std::string_view token, std::size_t line_no) {
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    fail_at(line_no, "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

// Fan around the first corner: (0,1,2), (0,2,3), ...
void append_fan(const std::vector<std::uint32_t>& polygon, std::vector<Face>& faces,
                std::vector<std::uint32_t>& polygon_ids) {
  const auto id = static_cast<std::uint32_t>(polygon_ids.empty() ? 0 : polygon_ids.back() + 1);
  for (std::size_t k = 1; k + 1 < polygon.size(); ++k) {
    faces.push_back({polygon[0], polygon[k], polygon[k + 1]});
    polygon_ids.push_back(id);
  }
}

std::string lowercase_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

}  // namespace

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

Mesh Mesh::from_arrays(std::vector<Vec3> vertices, std::vector<Face> faces,
                       std::vector<std::uint32_t> polygon_ids) {
  if (vertices.empty()) throw Error(ErrorKind::kEmptyMesh, "mesh has no vertices");
  if (faces.empty()) throw Error(ErrorKind::kEmptyMesh, "mesh has no faces");
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (const auto index : faces[f]) {
      if (index >= vertices.size()) {
        throw Error(ErrorKind::kIndex,
                    "face " + std::to_string(f) + " references vertex " +
                        std::to_string(index) + " of " +
                        std::to_string(vertices.size()));
      }
    }
  }
  Mesh mesh;
  mesh.bbox_min_ = Vec3::Constant(std::numeric_limits<double>::infinity());
  mesh.bbox_max_ = Vec3::Constant(-std::numeric_limits<double>::infinity());
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (!vertices[v].allFinite()) {
      throw Error(ErrorKind::kFormat, "vertex " + std::to_string(v) + " is not finite");
    }
    mesh.bbox_min_ = mesh.bbox_min_.cwiseMin(vertices[v]);
    mesh.bbox_max_ = mesh.bbox_max_.cwiseMax(vertices[v]);
  }
  mesh.face_areas_.reserve(faces.size());
  for (const auto& f : faces) {
    const double area = triangle_area(vertices[f[0]], vertices[f[1]], vertices[f[2]]);
    mesh.face_areas_.push_back(area);
    mesh.total_area_ += area;
  }
  if (polygon_ids.empty()) {
    polygon_ids.resize(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f) polygon_ids[f] = static_cast<std::uint32_t>(f);
    mesh.polygon_areas_ = mesh.face_areas_;
  } else {
    if (polygon_ids.size() != faces.size()) {
      throw Error(ErrorKind::kIndex, "polygon id list does not match face count");
    }
    std::map<std::uint32_t, std::uint32_t> dense;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      const auto [it, inserted] =
          dense.emplace(polygon_ids[f], static_cast<std::uint32_t>(dense.size()));
      if (inserted) mesh.polygon_areas_.push_back(0.0);
      polygon_ids[f] = it->second;
      mesh.polygon_areas_[it->second] += mesh.face_areas_[f];
    }
  }
  mesh.vertices_ = std::move(vertices);
  mesh.faces_ = std::move(faces);
  mesh.polygon_ids_ = std::move(polygon_ids);
  return mesh;
}

std::size_t Mesh::degenerate_count() const {
  return static_cast<std::size_t>(
      std::count(face_areas_.begin(), face_areas_.end(), 0.0));
}

Mesh parse_off(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  // Pending tokens let the counts share the header line ("OFF 8 6 0").
  std::vector<std::string_view> tokens;
  std::string token_line;

  auto next_tokens = [&]() -> bool {
    while (std::getline(in, raw)) {
      ++line_no;
      token_line = std::string(strip_comment(raw));
      tokens = split_tokens(token_line);
      if (!tokens.empty()) return true;
    }
    return false;
  };

  if (!next_tokens()) throw Error(ErrorKind::kFormat, "line 1: missing OFF header");
  if (tokens.front() != "OFF") fail_at(line_no, "expected 'OFF' header");
  tokens.erase(tokens.begin());
  if (tokens.empty() && !next_tokens()) fail_at(line_no, "missing counts line");
  if (tokens.size() < 2) fail_at(line_no, "counts line needs vertex and face counts");
  const long long vertex_count = parse_integer(tokens[0], line_no);
  const long long face_count = parse_integer(tokens[1], line_no);
  if (vertex_count < 0 || face_count < 0) fail_at(line_no, "negative element count");

  std::vector<Vec3> vertices;
  vertices.reserve(static_cast<std::size_t>(vertex_count));
  for (long long v = 0; v < vertex_count; ++v) {
    if (!next_tokens()) fail_at(line_no + 1, "unexpected end of file in vertex list");
    if (tokens.size() < 3) fail_at(line_no, "vertex needs 3 coordinates");
    vertices.emplace_back(parse_double(tokens[0], line_no),
                          parse_double(tokens[1], line_no),
                          parse_double(tokens[2], line_no));
  }

  std::vector<Face> faces;
  std::vector<std::uint32_t> polygon_ids;
  faces.reserve(static_cast<std::size_t>(face_count));
  std::vector<std::uint32_t> polygon;
  for (long long f = 0; f < face_count; ++f) {
    if (!next_tokens()) fail_at(line_no + 1, "unexpected end of file in face list");
    const long long n = parse_integer(tokens[0], line_no);
    if (n < 3) fail_at(line_no, "face needs at least 3 vertices");
    if (static_cast<long long>(tokens.size()) < n + 1) {
      fail_at(line_no, "face lists fewer indices than declared");
    }
    polygon.clear();
    for (long long k = 1; k <= n; ++k) {
      const long long index = parse_integer(tokens[static_cast<std::size_t>(k)], line_no);
      if (index < 0 || index >= vertex_count) {
        throw Error(ErrorKind::kIndex, "line " + std::to_string(line_no) +
                                           ": vertex index " + std::to_string(index) +
                                           " out of range");
      }
      polygon.push_back(static_cast<std::uint32_t>(index));
    }
    append_fan(polygon, faces, polygon_ids);
  }
  return Mesh::from_arrays(std::move(vertices), std::move(faces), std::move(polygon_ids));
}

Mesh parse_obj(std::istream& in) {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::vector<std::uint32_t> polygon_ids;
  std::vector<std::uint32_t> polygon;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line(strip_comment(raw));
    const auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "v") {
      if (tokens.size() < 4) fail_at(line_no, "vertex needs 3 coordinates");
      vertices.emplace_back(parse_double(tokens[1], line_no),
                            parse_double(tokens[2], line_no),
                            parse_double(tokens[3], line_no));
    } else if (tokens[0] == "f") {
      if (tokens.size() < 4) fail_at(line_no, "face needs at least 3 vertices");
      polygon.clear();
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        // v, v/vt, v//vn or v/vt/vn; only the position index matters.
        const auto slash = tokens[k].find('/');
        const long long index = parse_integer(tokens[k].substr(0, slash), line_no);
        const long long count = static_cast<long long>(vertices.size());
        const long long resolved = index < 0 ? count + index : index - 1;
        if (index == 0 || resolved < 0 || resolved >= count) {
          throw Error(ErrorKind::kIndex, "line " + std::to_string(line_no) +
                                             ": vertex index " + std::to_string(index) +
                                             " out of range");
        }
        polygon.push_back(static_cast<std::uint32_t>(resolved));
      }
      append_fan(polygon, faces, polygon_ids);
    }
    // vt, vn, usemtl, mtllib, o, g, s and friends are ignored.
  }
  return Mesh::from_arrays(std::move(vertices), std::move(faces), std::move(polygon_ids));
}

Mesh load_mesh(const std::filesystem::path& path, MeshFormat format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open mesh file " + path.string());
  Mesh mesh = [&] {
    try {
      return format == MeshFormat::kOff ? parse_off(in) : parse_obj(in);
    } catch (const Error& e) {
      throw Error(e.kind(), path.string() + ": " + e.what());
    }
  }();
  if (!(mesh.total_area() > 0.0)) {
    throw Error(ErrorKind::kDegenerateGeometry,
                path.string() + ": total surface area is zero");
  }
  return mesh;
}

Mesh load_mesh(const std::filesystem::path& path) {
  const std::string ext = lowercase_extension(path);
  if (ext == ".off") return load_mesh(path, MeshFormat::kOff);
  if (ext == ".obj") return load_mesh(path, MeshFormat::kObj);
  throw Error(ErrorKind::kArgument,
              "cannot infer mesh format from extension of " + path.string());
}

void write_off(const Mesh& mesh, std::ostream& out) {
  // Rebuild polygons from runs of faces that share a polygon id and form a
  // fan (a,b,c), (a,c,d), ...; anything else is written triangle by triangle.
  std::vector<std::vector<std::uint32_t>> polygons;
  const auto& faces = mesh.faces();
  for (std::size_t f = 0; f < faces.size();) {
    std::vector<std::uint32_t> poly(faces[f].begin(), faces[f].end());
    std::size_t g = f + 1;
    while (g < faces.size() && mesh.polygon_of(g) == mesh.polygon_of(f) &&
           faces[g][0] == poly.front() && faces[g][1] == poly.back()) {
      poly.push_back(faces[g][2]);
      ++g;
    }
    const bool whole_polygon = g == faces.size() || mesh.polygon_of(g) != mesh.polygon_of(f);
    const bool fresh = f == 0 || mesh.polygon_of(f - 1) != mesh.polygon_of(f);
    if (whole_polygon && fresh) {
      polygons.push_back(std::move(poly));
    } else {
      for (std::size_t k = f; k < g; ++k) {
        polygons.emplace_back(faces[k].begin(), faces[k].end());
      }
    }
    f = g;
  }
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "OFF\n" << mesh.vertex_count() << ' ' << polygons.size() << " 0\n";
  for (const auto& v : mesh.vertices()) out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& poly : polygons) {
    out << poly.size();
    for (const auto v : poly) out << ' ' << v;
    out << '\n';
  }
  out.precision(old_precision);
}

void write_off(const Mesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  write_off(mesh, out);
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

MeshSummary mesh_summary(const Mesh& mesh) {
  return MeshSummary{
      .vertex_count = mesh.vertex_count(),
      .face_count = mesh.face_count(),
      .polygon_count = mesh.polygon_count(),
      .degenerate_count = mesh.degenerate_count(),
      .total_area = mesh.total_area(),
      .bbox_min = mesh.bbox_min(),
      .bbox_max = mesh.bbox_max(),
      .bbox_diagonal = mesh.bbox_diagonal(),
  };
}

Mesh transformed(const Mesh& mesh, const Mat3& linear) {
  std::vector<Vec3> vertices;
  vertices.reserve(mesh.vertex_count());
  for (const auto& v : mesh.vertices()) vertices.push_back(linear * v);
  return Mesh::from_arrays(std::move(vertices), mesh.faces(), mesh.polygon_ids());
}

Mesh subdivide_faces(const Mesh& mesh, std::span<const std::uint32_t> faces, int levels) {
  std::vector<Vec3> vertices = mesh.vertices();
  std::vector<Face> current = mesh.faces();
  std::vector<std::uint32_t> polygons = mesh.polygon_ids();
  auto next_polygon = static_cast<std::uint32_t>(mesh.polygon_count());
  std::vector<bool> marked(current.size(), false);
  for (const auto f : faces) {
    if (f >= current.size()) throw Error(ErrorKind::kIndex, "subdivide: face out of range");
    marked[f] = true;
  }
  for (int level = 0; level < levels; ++level) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> midpoints;
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::minmax(a, b);
      const auto it = midpoints.find(key);
      if (it != midpoints.end()) return it->second;
      const auto index = static_cast<std::uint32_t>(vertices.size());
      vertices.push_back(0.5 * (vertices[a] + vertices[b]));
      midpoints.emplace(key, index);
      return index;
    };
    std::vector<Face> next;
    std::vector<std::uint32_t> next_polygons;
    std::vector<bool> next_marked;
    next.reserve(current.size());
    for (std::size_t f = 0; f < current.size(); ++f) {
      if (!marked[f]) {
        next.push_back(current[f]);
        next_polygons.push_back(polygons[f]);
        next_marked.push_back(false);
        continue;
      }
      const auto [a, b, c] = current[f];
      const auto ab = midpoint(a, b);
      const auto bc = midpoint(b, c);
      const auto ca = midpoint(c, a);
      for (const Face child : {Face{a, ab, ca}, Face{ab, b, bc}, Face{ca, bc, c}, Face{ab, bc, ca}}) {
        next.push_back(child);
        next_polygons.push_back(next_polygon++);
        next_marked.push_back(true);
      }
    }
    current = std::move(next);
    polygons = std::move(next_polygons);
    marked = std::move(next_marked);
  }
  return Mesh::from_arrays(std::move(vertices), std::move(current), std::move(polygons));
}

Mesh compact_faces(const Mesh& mesh, std::span<const std::uint32_t> keep) {
  constexpr auto kUnused = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> remap(mesh.vertex_count(), kUnused);
  for (const auto f : keep) {
    if (f >= mesh.face_count()) throw Error(ErrorKind::kIndex, "compact: face out of range");
    for (const auto v : mesh.faces()[f]) remap[v] = 0;
  }
  std::vector<Vec3> vertices;
  for (std::size_t v = 0; v < remap.size(); ++v) {
    if (remap[v] == kUnused) continue;
    remap[v] = static_cast<std::uint32_t>(vertices.size());
    vertices.push_back(mesh.vertices()[v]);
  }
  std::vector<Face> faces;
  std::vector<std::uint32_t> polygons;
  faces.reserve(keep.size());
  for (const auto f : keep) {
    const auto& face = mesh.faces()[f];
    faces.push_back({remap[face[0]], remap[face[1]], remap[face[2]]});
    polygons.push_back(mesh.polygon_of(f));
  }
  return Mesh::from_arrays(std::move(vertices), std::move(faces), std::move(polygons));
}

}  // namespace vqe
