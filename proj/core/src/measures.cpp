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

#include "vqe/measures.hpp"

#include <algorithm>
#include <cmath>

#include "vqe/errors.hpp"
#include "vqe/parallel.hpp"

namespace vqe {
namespace {

void require_pixels(const ViewDistribution& view) {
  if (view.total == 0) {
    throw Error(ErrorKind::kEmptyView, "view covers no pixels (model out of frame)");
  }
}

}  // namespace

std::string_view to_string(Measure measure) {
  switch (measure) {
    case Measure::kVE: return "VE";
    case Measure::kVR: return "VR";
    case Measure::kVKL: return "VKL";
    case Measure::kVMI: return "VMI";
  }
  return "?";
}

std::optional<Measure> parse_measure(std::string_view name) {
  for (const auto m : kAllMeasures) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view to_string(Orientation orientation) {
  return orientation == Orientation::kMaxIsBest ? "max_is_best" : "min_is_best";
}

Orientation orientation_of(Measure measure) {
  return measure == Measure::kVE || measure == Measure::kVR ? Orientation::kMaxIsBest
                                                            : Orientation::kMinIsBest;
}

ViewDistribution polygon_distribution(const FaceStats& stats, const Mesh& mesh) {
  if (stats.pixel_counts.size() != mesh.face_count()) {
    throw Error(ErrorKind::kArgument, "face statistics do not match the mesh");
  }
  ViewDistribution view;
  view.total = stats.total_pixels;
  if (mesh.triangles_only()) {
    for (std::size_t f = 0; f < stats.pixel_counts.size(); ++f) {
      if (stats.pixel_counts[f] == 0) continue;
      view.polygons.push_back(static_cast<std::uint32_t>(f));
      view.pixels.push_back(stats.pixel_counts[f]);
    }
    return view;
  }
  std::vector<std::uint64_t> dense(mesh.polygon_count(), 0);
  for (std::size_t f = 0; f < stats.pixel_counts.size(); ++f) {
    dense[mesh.polygon_of(f)] += stats.pixel_counts[f];
  }
  for (std::size_t p = 0; p < dense.size(); ++p) {
    if (dense[p] == 0) continue;
    view.polygons.push_back(static_cast<std::uint32_t>(p));
    view.pixels.push_back(dense[p]);
  }
  return view;
}

double viewpoint_entropy(const ViewDistribution& view) {
  require_pixels(view);
  const double total = static_cast<double>(view.total);
  double h = 0.0;
  for (const auto a : view.pixels) {
    const double p = static_cast<double>(a) / total;
    h -= p * std::log(p);
  }
  return h;
}

double viewpoint_entropy(const FaceStats& stats, const Mesh& mesh) {
  return viewpoint_entropy(polygon_distribution(stats, mesh));
}

double visibility_ratio(const ViewDistribution& view, const Mesh& mesh) {
  if (!(mesh.total_area() > 0.0)) {
    throw Error(ErrorKind::kDegenerateGeometry, "mesh has zero total area");
  }
  double visible_area = 0.0;
  for (const auto z : view.polygons) visible_area += mesh.polygon_area(z);
  return visible_area / mesh.total_area();
}

double visibility_ratio(const FaceStats& stats, const Mesh& mesh) {
  return visibility_ratio(polygon_distribution(stats, mesh), mesh);
}

double viewpoint_kl(const ViewDistribution& view, const Mesh& mesh) {
  require_pixels(view);
  const double total = static_cast<double>(view.total);
  const double area_total = mesh.total_area();
  double kl = 0.0;
  for (std::size_t i = 0; i < view.polygons.size(); ++i) {
    const double area = mesh.polygon_area(view.polygons[i]);
    if (!(area > 0.0)) {
      throw Error(ErrorKind::kMeasureUndefined,
                  "polygon " + std::to_string(view.polygons[i]) +
                      " covers pixels but has zero area");
    }
    const double p = static_cast<double>(view.pixels[i]) / total;
    kl += p * std::log(p * area_total / area);
  }
  return kl;
}

double viewpoint_kl(const FaceStats& stats, const Mesh& mesh) {
  return viewpoint_kl(polygon_distribution(stats, mesh), mesh);
}

FacePrior face_prior(std::span<const ViewDistribution> views, std::size_t polygon_count) {
  FacePrior prior;
  prior.p.assign(polygon_count, 0.0);
  std::size_t used = 0;
  for (const auto& view : views) {
    if (view.total == 0) continue;
    ++used;
    const double total = static_cast<double>(view.total);
    for (std::size_t i = 0; i < view.polygons.size(); ++i) {
      prior.p[view.polygons[i]] += static_cast<double>(view.pixels[i]) / total;
    }
  }
  if (used == 0) throw Error(ErrorKind::kEmptyView, "no view covers any pixel");
  for (auto& p : prior.p) p /= static_cast<double>(used);
  return prior;
}

FacePrior face_prior(std::span<const FaceStats> views, const Mesh& mesh) {
  std::vector<ViewDistribution> dists;
  dists.reserve(views.size());
  for (const auto& s : views) dists.push_back(polygon_distribution(s, mesh));
  return face_prior(dists, mesh.polygon_count());
}

double viewpoint_mi(const ViewDistribution& view, const FacePrior& prior) {
  require_pixels(view);
  const double total = static_cast<double>(view.total);
  double mi = 0.0;
  for (std::size_t i = 0; i < view.polygons.size(); ++i) {
    const auto z = view.polygons[i];
    if (z >= prior.p.size() || !(prior.p[z] > 0.0)) {
      throw Error(ErrorKind::kInconsistentPrior,
                  "prior assigns zero probability to visible polygon " + std::to_string(z));
    }
    const double p = static_cast<double>(view.pixels[i]) / total;
    mi += p * std::log(p / prior.p[z]);
  }
  return mi;
}

double viewpoint_mi(const FaceStats& stats, const Mesh& mesh, const FacePrior& prior) {
  return viewpoint_mi(polygon_distribution(stats, mesh), prior);
}

VQMap normalize_map(std::span<const double> raw, Orientation orientation, Measure measure) {
  const std::vector<std::uint8_t> valid(raw.size(), 1);
  return normalize_map(raw, valid, orientation, measure);
}

VQMap normalize_map(std::span<const double> raw, std::span<const std::uint8_t> valid,
                    Orientation orientation, Measure measure) {
  if (raw.empty()) throw Error(ErrorKind::kArgument, "cannot normalize an empty map");
  if (valid.size() != raw.size()) throw Error(ErrorKind::kArgument, "validity mask size mismatch");
  VQMap map;
  map.measure = measure;
  map.orientation = orientation;
  map.raw.assign(raw.begin(), raw.end());
  map.valid.assign(valid.begin(), valid.end());
  map.normalized.assign(raw.size(), 0.0);

  const bool max_best = orientation == Orientation::kMaxIsBest;
  bool any = false;
  for (std::size_t v = 0; v < raw.size(); ++v) {
    if (!valid[v]) continue;
    if (!any) {
      map.best_index = map.worst_index = v;
      any = true;
      continue;
    }
    const bool better = max_best ? raw[v] > raw[map.best_index] : raw[v] < raw[map.best_index];
    const bool worse = max_best ? raw[v] < raw[map.worst_index] : raw[v] > raw[map.worst_index];
    if (better) map.best_index = v;
    if (worse) map.worst_index = v;
  }
  if (!any) throw Error(ErrorKind::kArgument, "no valid view to normalize");

  const double best = raw[map.best_index];
  const double worst = raw[map.worst_index];
  for (std::size_t v = 0; v < raw.size(); ++v) {
    if (!valid[v]) continue;
    if (best == worst) {
      map.normalized[v] = 1.0;
    } else {
      map.normalized[v] = std::clamp((raw[v] - worst) / (best - worst), 0.0, 1.0) + 0.0;
    }
  }
  if (best == worst) map.worst_index = map.best_index;
  return map;
}

ModelEvaluation evaluate_model(const Mesh& mesh, const ViewSphere& sphere,
                               const EvaluationOptions& options) {
  const std::size_t n = sphere.size();
  if (n == 0) throw Error(ErrorKind::kArgument, "empty view sphere");

  struct PerView {
    ViewDistribution dist;
    double ve = 0.0, vr = 0.0, vkl = 0.0;
    bool kl_ok = true;
    bool clipped = false;
    std::string kl_error;
  };
  std::vector<PerView> views(n);
  const unsigned workers = resolve_threads(options.threads);
  std::vector<Rasterizer> rasterizers(std::min<std::size_t>(workers, n));

  parallel_for(n, workers, [&](std::size_t v, unsigned worker) {
    const Camera camera = make_camera(mesh, sphere[v], options.resolution, options.camera);
    const FaceStats stats = rasterizers[worker].rasterize(mesh, camera);
    PerView& out = views[v];
    out.dist = polygon_distribution(stats, mesh);
    out.clipped = stats.clipped_faces > 0;
    if (out.dist.total == 0) return;
    out.ve = viewpoint_entropy(out.dist);
    out.vr = visibility_ratio(out.dist, mesh);
    try {
      out.vkl = viewpoint_kl(out.dist, mesh);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kMeasureUndefined) throw;
      out.kl_ok = false;
      out.kl_error = e.what();
    }
  });

  ModelEvaluation result;
  result.total_pixels.resize(n);
  std::vector<std::uint8_t> rendered(n), kl_valid(n);
  std::vector<ViewDistribution> dists;
  dists.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    result.total_pixels[v] = views[v].dist.total;
    rendered[v] = views[v].dist.total > 0;
    kl_valid[v] = rendered[v] && views[v].kl_ok;
    result.clipped_views += views[v].clipped;
    if (!rendered[v]) {
      result.issues.push_back({v, "all", "view covers no pixels"});
    } else if (!views[v].kl_ok) {
      result.issues.push_back({v, "VKL", views[v].kl_error});
    }
    dists.push_back(std::move(views[v].dist));
  }
  if (std::none_of(rendered.begin(), rendered.end(), [](auto r) { return r != 0; })) {
    throw Error(ErrorKind::kEmptyView, "model renders to zero pixels from every view");
  }

  const FacePrior prior = face_prior(dists, mesh.polygon_count());
  std::vector<double> ve(n, 0.0), vr(n, 0.0), vkl(n, 0.0), vmi(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!rendered[v]) continue;
    ve[v] = views[v].ve;
    vr[v] = views[v].vr;
    vkl[v] = views[v].vkl;
    vmi[v] = viewpoint_mi(dists[v], prior);
  }
  result.maps[0] = normalize_map(ve, rendered, orientation_of(Measure::kVE), Measure::kVE);
  result.maps[1] = normalize_map(vr, rendered, orientation_of(Measure::kVR), Measure::kVR);
  if (std::any_of(kl_valid.begin(), kl_valid.end(), [](auto k) { return k != 0; })) {
    result.maps[2] = normalize_map(vkl, kl_valid, orientation_of(Measure::kVKL), Measure::kVKL);
  } else {
    throw Error(ErrorKind::kMeasureUndefined, "VKL is undefined for every rendered view");
  }
  result.maps[3] = normalize_map(vmi, rendered, orientation_of(Measure::kVMI), Measure::kVMI);
  return result;
}

}  // namespace vqe
