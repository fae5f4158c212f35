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

#include "vqe/face_cleaning.hpp"

#include <fstream>

#include "json.hpp"
#include "vqe/errors.hpp"
#include "vqe/parallel.hpp"
#include "vqe/sampling.hpp"

namespace vqe {

CleaningResult remove_hidden_faces(const Mesh& mesh, const CleaningOptions& options) {
  if (options.n_views == 0) throw Error(ErrorKind::kArgument, "n_views must be at least 1");
  const ViewSphere sphere = fibonacci_sphere(options.n_views);

  // Per-view visibility masks, OR-reduced afterwards so the result does not
  // depend on scheduling.
  const unsigned workers = resolve_threads(options.threads);
  std::vector<Rasterizer> rasterizers(std::min<std::size_t>(workers, sphere.size()));
  std::vector<std::vector<std::uint8_t>> seen(rasterizers.size(),
                                              std::vector<std::uint8_t>(mesh.face_count(), 0));
  parallel_for(sphere.size(), workers, [&](std::size_t v, unsigned worker) {
    const Camera camera = make_camera(mesh, sphere[v], options.resolution, options.camera);
    const FaceStats stats = rasterizers[worker].rasterize(mesh, camera);
    auto& mask = seen[worker];
    for (std::size_t f = 0; f < mesh.face_count(); ++f) mask[f] |= stats.pixel_counts[f] > 0;
  });

  std::vector<std::uint32_t> keep;
  CleaningResult result{mesh, {}, {}};
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    bool visible = false;
    for (const auto& mask : seen) visible = visible || mask[f];
    (visible ? keep : result.removed).push_back(static_cast<std::uint32_t>(f));
  }
  if (keep.empty()) throw Error(ErrorKind::kEmptyMesh, "no face is visible from any view");
  if (options.resolution.width < kMinCleaningResolution ||
      options.resolution.height < kMinCleaningResolution) {
    result.warnings.push_back("resolution below 512x512: sub-pixel faces may be removed");
  }
  if (!result.removed.empty()) result.mesh = compact_faces(mesh, keep);
  return result;
}

void write_cleaning_report(const CleaningResult& result, const Mesh& original,
                           const CleaningOptions& options, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["original_faces"] = original.face_count();
  j["original_vertices"] = original.vertex_count();
  j["kept_faces"] = result.mesh.face_count();
  j["kept_vertices"] = result.mesh.vertex_count();
  j["removed_count"] = result.removed.size();
  j["removed_faces"] = result.removed;
  j["views"] = options.n_views;
  j["resolution"] = {options.resolution.width, options.resolution.height};
  j["warnings"] = result.warnings;
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path.string());
}

}  // namespace vqe
