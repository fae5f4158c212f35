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
#include <string>
#include <vector>

#include "vqe/mesh.hpp"
#include "vqe/rasterizer.hpp"

namespace vqe {

struct CleaningOptions {
  std::size_t n_views = 1000;
  Resolution resolution{1024, 1024};
  CameraOptions camera;
  unsigned threads = 0;
};

/// Below this many pixels per side, sub-pixel faces may be dropped.
inline constexpr std::uint32_t kMinCleaningResolution = 512;

struct CleaningResult {
  Mesh mesh;
  std::vector<std::uint32_t> removed;  ///< original face indices, ascending
  std::vector<std::string> warnings;
};

/// Keeps a face iff it owns at least one pixel in some view of an n_views
/// Fibonacci sphere, then drops unreferenced vertices. Throws kArgument for
/// n_views == 0 and kEmptyMesh when no face is visible at all.
CleaningResult remove_hidden_faces(const Mesh& mesh, const CleaningOptions& options = {});

/// JSON summary: counts, removed indices, warnings, settings.
void write_cleaning_report(const CleaningResult& result, const Mesh& original,
                           const CleaningOptions& options, const std::filesystem::path& path);

}  // namespace vqe
