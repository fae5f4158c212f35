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

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "vqe/errors.hpp"
#include "vqe/sampling.hpp"

namespace vqe {
namespace {

void put_u32_le(std::ostream& out, std::uint32_t value) {
  const std::array<char, 4> bytes = {
      static_cast<char>(value & 0xffu), static_cast<char>((value >> 8) & 0xffu),
      static_cast<char>((value >> 16) & 0xffu), static_cast<char>((value >> 24) & 0xffu)};
  out.write(bytes.data(), 4);
}

std::uint32_t get_u32_le(std::istream& in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  if (!in) throw Error(ErrorKind::kFormat, "truncated binary point cloud");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_xyz(const SurfaceCloud& cloud, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& p : cloud.points) out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

std::vector<Vec3> read_xyz(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<Vec3> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    double x, y, z;
    if (!(fields >> x >> y >> z)) {
      throw Error(ErrorKind::kFormat, path.string() + ": line " + std::to_string(line_no) +
                                          ": expected three coordinates");
    }
    points.emplace_back(x, y, z);
  }
  return points;
}

void write_cloud_binary(const SurfaceCloud& cloud, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  put_u32_le(out, static_cast<std::uint32_t>(cloud.size()));
  for (const auto& p : cloud.points) {
    for (int axis = 0; axis < 3; ++axis) {
      put_u32_le(out, std::bit_cast<std::uint32_t>(static_cast<float>(p[axis])));
    }
  }
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

std::vector<Vec3> read_cloud_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  const std::uint32_t count = get_u32_le(in);
  std::vector<Vec3> points;
  points.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    Vec3 p;
    for (int axis = 0; axis < 3; ++axis) {
      p[axis] = static_cast<double>(std::bit_cast<float>(get_u32_le(in)));
    }
    points.push_back(p);
  }
  return points;
}

}  // namespace vqe
