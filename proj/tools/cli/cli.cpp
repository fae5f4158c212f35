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

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vqe/dataset.hpp"
#include "vqe/descent.hpp"
#include "vqe/errors.hpp"
#include "vqe/face_cleaning.hpp"
#include "vqe/labelgen.hpp"
#include "vqe/measures.hpp"
#include "vqe/mesh.hpp"
#include "vqe/parallel.hpp"
#include "vqe/rasterizer.hpp"
#include "vqe/sampling.hpp"
#include "vqe/sphere_map.hpp"

namespace vqe::cli {
namespace {

using Json = nlohmann::ordered_json;

/// Bad flag values found after parsing; reported as usage errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json vec_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

EvaluationOptions evaluation_options(const RunConfig& c) {
  EvaluationOptions o;
  o.resolution = {c.resolution, c.resolution};
  o.camera.vertical_fov = c.fov_deg * kPi / 180.0;
  o.camera.distance_factor = c.distance_factor;
  o.threads = c.threads;
  return o;
}

std::vector<Measure> selected_measures(const RunConfig& c) {
  std::vector<Measure> out;
  for (const auto& name : c.measures) {
    const auto m = parse_measure(name);
    if (!m) throw UsageError("unknown measure '" + name + "' (expected VE, VR, VKL or VMI)");
    out.push_back(*m);
  }
  return out;
}

Projection parse_projection(const std::string& name) {
  if (name == "mercator") return Projection::kMercator;
  if (name == "equirectangular") return Projection::kEquirectangular;
  throw UsageError("unknown projection '" + name + "'");
}

GaussianParams gaussian_params(const RunConfig& c) {
  GaussianParams g;
  g.sigma = c.sigma;
  g.s = c.s;
  if (c.kernel == "linear") {
    g.kernel = GaussianKernel::kLinearDistance;
  } else if (c.kernel == "squared") {
    g.kernel = GaussianKernel::kSquaredDistance;
  } else {
    throw UsageError("unknown kernel '" + c.kernel + "' (expected linear or squared)");
  }
  return g;
}

Mesh load_checked(const RunConfig& c, const std::string& path, std::ostream& err) {
  Mesh mesh = load_mesh(path);
  if (mesh.face_count() > c.face_warning) {
    err << "warning: " << path << " has " << mesh.face_count() << " faces (threshold "
        << c.face_warning << "); sampling time grows linearly with faces\n";
  }
  if (mesh.degenerate_count() > 0) {
    err << "warning: " << path << " has " << mesh.degenerate_count()
        << " zero-area faces; they are kept but never visible\n";
  }
  return mesh;
}

std::string model_id_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

Json best_views_json(const std::vector<Measure>& measures, const ViewSphere& sphere,
                     const std::array<const VQMap*, 4>& maps) {
  Json best = Json::object();
  for (const auto m : measures) {
    const VQMap& map = *maps[static_cast<std::size_t>(m)];
    Json j;
    j["index"] = map.best_index;
    j["direction"] = vec_json(sphere[map.best_index]);
    j["raw"] = map.raw[map.best_index];
    j["orientation"] = std::string(to_string(map.orientation));
    best[std::string(to_string(m))] = std::move(j);
  }
  return best;
}

/// VQ maps rebuilt from a stored record; excluded views (NaN raw) stay invalid.
std::array<VQMap, 4> maps_from_record(const ModelRecord& record) {
  std::array<VQMap, 4> maps;
  for (std::size_t m = 0; m < 4; ++m) {
    const MeasureRecord& r = record.measures[m];
    std::vector<std::uint8_t> valid(r.raw.size());
    for (std::size_t v = 0; v < r.raw.size(); ++v) valid[v] = std::isfinite(r.raw[v]);
    maps[m] = normalize_map(r.raw, valid, r.orientation, r.measure);
  }
  return maps;
}

bool is_record_path(const std::string& path) {
  return std::filesystem::path(path).extension() == ".json";
}

}  // namespace

int cmd_sample_vq(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto measures = selected_measures(c);
  const auto projection = parse_projection(c.projection);
  const std::string& input = c.inputs.at(0);
  const Mesh mesh = load_checked(c, input, err);
  const ViewSphere sphere = fibonacci_sphere(c.views);
  const EvaluationOptions options = evaluation_options(c);

  const auto t0 = std::chrono::steady_clock::now();
  const ModelEvaluation eval = evaluate_model(mesh, sphere, options);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& issue : eval.issues) {
    err << "warning: view " << issue.view << " excluded from " << issue.measure << ": "
        << issue.reason << '\n';
  }
  if (eval.clipped_views > 0) {
    err << "note: " << eval.clipped_views << " views clip geometry against the frustum\n";
  }

  const ModelRecord record = make_record(model_id_of(input), eval, c.views, options);
  write_record(record, c.output);
  if (!c.sphere_map.empty()) {
    export_sphere_map(eval.map(measures.front()), sphere, c.sphere_map, projection, c.map_size);
  }

  std::array<const VQMap*, 4> maps{};
  for (std::size_t m = 0; m < 4; ++m) maps[m] = &eval.maps[m];
  Json j;
  j["model_id"] = record.model_id;
  j["record"] = c.output;
  j["csv"] = csv_sidecar(c.output).string();
  j["views"] = c.views;
  j["faces"] = mesh.face_count();
  j["seconds"] = seconds;
  j["best"] = best_views_json(measures, sphere, maps);
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_best_view(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto measures = selected_measures(c);
  const std::string& input = c.inputs.at(0);
  Json j;
  j["model_id"] = model_id_of(input);
  if (is_record_path(input)) {
    std::vector<std::string> warnings;
    const ModelRecord record = read_record(input, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    const auto maps = maps_from_record(record);
    const ViewSphere sphere = fibonacci_sphere(record.sphere_size);
    j["model_id"] = record.model_id;
    j["views"] = record.sphere_size;
    j["best"] = best_views_json(measures, sphere, {&maps[0], &maps[1], &maps[2], &maps[3]});
    out << j.dump() << '\n';
    return kExitOk;
  }
  const Mesh mesh = load_checked(c, input, err);
  const ViewSphere sphere = fibonacci_sphere(c.views);
  const ModelEvaluation eval = evaluate_model(mesh, sphere, evaluation_options(c));
  Json excluded = Json::array();
  for (const auto& issue : eval.issues) {
    excluded.push_back({{"view", issue.view}, {"measure", issue.measure}, {"reason", issue.reason}});
  }
  j["views"] = c.views;
  j["best"] = best_views_json(measures, sphere,
                              {&eval.maps[0], &eval.maps[1], &eval.maps[2], &eval.maps[3]});
  j["excluded"] = std::move(excluded);
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_simulate_labels(const RunConfig& c, std::ostream& out, std::ostream& err) {
  DescentConfig config;
  config.total_steps = c.steps;
  config.switch_step = c.switch_step;
  config.learning_rate = c.learning_rate;
  config.alpha = c.alpha;
  config.gaussian = gaussian_params(c);
  config.seed = c.seed;
  config.threads = c.threads;
  if (c.switch_step > c.steps) throw UsageError("--switch must not exceed --steps");

  std::optional<ViewSphere> sphere;
  VQMap map;
  std::string source;
  if (!c.inputs.empty()) {
    const auto measures = selected_measures(c);
    std::vector<std::string> warnings;
    const ModelRecord record = read_record(c.inputs[0], &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    sphere = fibonacci_sphere(record.sphere_size);
    map = maps_from_record(record)[static_cast<std::size_t>(measures.front())];
    source = c.inputs[0];
  } else {
    sphere = fibonacci_sphere(c.views);
    Scenario scenario;
    if (c.scenario == "bimodal") {
      scenario = bimodal_scenario(*sphere);
    } else if (c.scenario == "unimodal") {
      scenario = unimodal_scenario(*sphere);
    } else {
      throw UsageError("unknown scenario '" + c.scenario + "' (expected unimodal or bimodal)");
    }
    map = synth_map(scenario.clusters, *sphere);
    config.sl_labels = scenario.conflicting_labels;
    source = c.scenario;
  }

  const StrategyReport report = compare_strategies(map, *sphere, config, c.inits);
  if (!c.trajectory.empty()) {
    DescentConfig one = config;
    one.strategy = Strategy::kMLGL;
    const auto init = random_unit_vectors(1, c.seed).front();
    write_trajectory_csv(descend(map, *sphere, one, init), c.trajectory);
  }

  Json j;
  j["source"] = source;
  j["views"] = sphere->size();
  j["inits"] = report.n_inits;
  j["sl_labels"] = config.sl_labels;
  Json strategies = Json::array();
  for (const auto& r : report.results) {
    strategies.push_back({{"strategy", std::string(to_string(r.strategy))},
                          {"mean_final_quality", r.mean_final_quality},
                          {"mean_convergence_step", r.mean_convergence_step}});
  }
  j["strategies"] = std::move(strategies);
  j["mean_boundary_distance"] = report.mean_boundary_distance;
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_clean_faces(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::string& input = c.inputs.at(0);
  const Mesh mesh = load_checked(c, input, err);
  CleaningOptions options;
  options.n_views = c.views;
  options.resolution = {c.resolution, c.resolution};
  options.camera = evaluation_options(c).camera;
  options.threads = c.threads;
  const CleaningResult result = remove_hidden_faces(mesh, options);
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  write_off(result.mesh, std::filesystem::path(c.output));
  if (!c.report.empty()) write_cleaning_report(result, mesh, options, c.report);

  Json j;
  j["input"] = input;
  j["output"] = c.output;
  j["original_faces"] = mesh.face_count();
  j["kept_faces"] = result.mesh.face_count();
  j["removed_count"] = result.removed.size();
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_bench(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.runs == 0) throw UsageError("--runs must be at least 1");
  Json rows = Json::array();
  for (const auto& input : c.inputs) {
    const Mesh mesh = load_checked(c, input, err);
    for (const auto res : c.bench_resolutions) {
      for (const auto views : c.bench_views) {
        RunConfig rc = c;
        rc.resolution = res;
        const EvaluationOptions options = evaluation_options(rc);
        const ViewSphere sphere = fibonacci_sphere(views);
        double total = 0.0, best = 0.0;
        std::vector<double> first_raw;
        bool consistent = true;
        std::size_t best_ve = 0;
        for (std::size_t r = 0; r < c.runs; ++r) {
          const auto t0 = std::chrono::steady_clock::now();
          const ModelEvaluation eval = evaluate_model(mesh, sphere, options);
          const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          total += s;
          best = r == 0 ? s : std::min(best, s);
          if (r == 0) {
            first_raw = eval.map(Measure::kVE).raw;
            best_ve = eval.map(Measure::kVE).best_index;
          } else {
            consistent = consistent && first_raw == eval.map(Measure::kVE).raw;
          }
        }
        err << input << ": " << views << " views at " << res << "^2, mean "
            << total / static_cast<double>(c.runs) << " s\n";
        rows.push_back({{"model", model_id_of(input)},
                        {"faces", mesh.face_count()},
                        {"views", views},
                        {"resolution", res},
                        {"runs", c.runs},
                        {"mean_seconds", total / static_cast<double>(c.runs)},
                        {"min_seconds", best},
                        {"best_VE", best_ve},
                        {"consistent", consistent}});
      }
    }
  }
  out << rows.dump(2) << '\n';
  return kExitOk;
}

int cmd_labels(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto measures = selected_measures(c);
  std::vector<std::string> warnings;
  const ModelRecord record = read_record(c.inputs.at(0), &warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  const ViewSphere sphere = fibonacci_sphere(record.sphere_size);
  const auto maps = maps_from_record(record);
  const VQMap& map = maps[static_cast<std::size_t>(measures.front())];
  if (!c.prediction.empty() && c.prediction.size() != 3) {
    throw UsageError("--pred takes three numbers");
  }
  const Vec3 pred = c.prediction.empty() ? Vec3::UnitZ()
                                         : Vec3(c.prediction[0], c.prediction[1], c.prediction[2]);
  const GaussianParams params = gaussian_params(c);
  const LabelSet labels = build_label_set(map, sphere, c.alpha);
  const LabelChoice ml = ml_loss(pred, labels);
  const GaussianTarget gl = gl_target(pred, map, sphere, params);

  Json j;
  j["model_id"] = record.model_id;
  j["measure"] = std::string(to_string(map.measure));
  j["alpha"] = c.alpha;
  j["prediction"] = vec_json(pred.normalized());
  j["label_set"] = labels.indices;
  j["ml"] = {{"index", ml.index}, {"direction", vec_json(sphere[ml.index])}, {"loss", ml.loss}};
  j["gl"] = {{"index", gl.index},
             {"direction", vec_json(sphere[gl.index])},
             {"weight", gl.weighted[gl.index]},
             {"loss", cosine_loss(pred, sphere[gl.index])}};
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_render(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Mesh mesh = load_checked(c, c.inputs.at(0), err);
  const ViewSphere sphere = fibonacci_sphere(c.views);
  if (c.view_index >= sphere.size()) throw UsageError("--view-index outside the view sphere");
  const EvaluationOptions options = evaluation_options(c);
  const Camera camera = make_camera(mesh, sphere[c.view_index], options.resolution, options.camera);
  Rasterizer rasterizer;
  const ItemBuffer& buffer = rasterizer.render(mesh, camera);
  if (!c.dump_buffer.empty()) write_item_buffer_pgm(buffer, c.dump_buffer);
  const FaceStats stats = rasterizer.rasterize(mesh, camera);

  Json j;
  j["view"] = c.view_index;
  j["direction"] = vec_json(sphere[c.view_index]);
  j["total_pixels"] = stats.total_pixels;
  j["visible_faces"] = stats.visible_count();
  j["clipped_faces"] = stats.clipped_faces;
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_sample_points(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.point_format != "xyz" && c.point_format != "bin") {
    throw UsageError("--format must be xyz or bin");
  }
  Mesh mesh = load_checked(c, c.inputs.at(0), err);
  if (c.rotate) mesh = transformed(mesh, random_rotation(c.seed));
  SurfaceCloud cloud = sample_surface_uniform(mesh, c.points, c.seed);
  if (c.fps_points > 0) cloud = farthest_point_sample(cloud, c.fps_points, c.seed);
  if (c.point_format == "xyz") {
    write_xyz(cloud, c.output);
  } else {
    write_cloud_binary(cloud, c.output);
  }
  Json j;
  j["output"] = c.output;
  j["points"] = cloud.size();
  out << j.dump() << '\n';
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Viewpoint quality estimation toolkit", "vqe"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kEngineVersion);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--views", c.views, "Number of Fibonacci views")->check(CLI::PositiveNumber);
    sub->add_option("--resolution", c.resolution, "Image side in pixels")->check(CLI::PositiveNumber);
    sub->add_option("--fov", c.fov_deg, "Vertical field of view, degrees")->check(CLI::Range(1.0, 179.0));
    sub->add_option("--distance-factor", c.distance_factor,
                    "Eye distance from the bbox center in bbox diagonals")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", c.threads, "Worker threads (0: $VQE_THREADS or all cores)");
    sub->add_option("--face-warning", c.face_warning, "Warn above this many faces");
  };
  auto add_mesh_input = [&](CLI::App* sub) {
    sub->add_option("input", c.inputs, "Mesh file (.off or .obj)")
        ->required()
        ->expected(1)
        ->check(CLI::ExistingFile);
  };
  auto add_measures = [&](CLI::App* sub) {
    sub->add_option("--measure", c.measures, "Measures to report (VE, VR, VKL, VMI)");
  };
  auto add_labels = [&](CLI::App* sub) {
    sub->add_option("--alpha", c.alpha, "Label quality threshold")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--sigma", c.sigma, "Gaussian label width")->check(CLI::PositiveNumber);
    sub->add_option("--s", c.s, "Gaussian label shift")->check(CLI::NonNegativeNumber);
    sub->add_option("--kernel", c.kernel, "Distance in the exponent: linear or squared");
  };

  auto* sample = app.add_subcommand("sample-vq", "Evaluate VE, VR, VKL, VMI over the view sphere");
  add_mesh_input(sample);
  add_common(sample);
  add_measures(sample);
  sample->add_option("-o,--output", c.output, "Record path (.json; a .csv sidecar is added)")
      ->required();
  sample->add_option("--sphere-map", c.sphere_map, "Also export the first measure as PGM");
  sample->add_option("--projection", c.projection, "mercator or equirectangular");
  sample->add_option("--map-size", c.map_size, "Sphere map width")->check(CLI::PositiveNumber);

  auto* best = app.add_subcommand("best-view", "Print the best view per measure as JSON");
  best->add_option("input", c.inputs, "Mesh file or stored record (.json)")
      ->required()
      ->expected(1)
      ->check(CLI::ExistingFile);
  add_common(best);
  add_measures(best);

  auto* simulate = app.add_subcommand("simulate-labels", "Compare SL, ML, GL and ML+GL descent");
  simulate->add_option("--record", c.inputs, "Use a stored record instead of a scenario")
      ->expected(1)
      ->check(CLI::ExistingFile);
  simulate->add_option("--scenario", c.scenario, "unimodal or bimodal");
  simulate->add_option("--views", c.views, "Views of the synthetic sphere")->check(CLI::PositiveNumber);
  simulate->add_option("--inits", c.inits, "Number of seeded initial predictions");
  simulate->add_option("--seed", c.seed, "Seed for the initial predictions");
  simulate->add_option("--steps", c.steps, "Descent steps");
  simulate->add_option("--switch", c.switch_step, "ML to GL switch step");
  simulate->add_option("--lr", c.learning_rate, "Learning rate")->check(CLI::PositiveNumber);
  simulate->add_option("--trajectory", c.trajectory, "CSV of the first ML+GL trajectory");
  simulate->add_option("--threads", c.threads, "Worker threads");
  add_measures(simulate);
  add_labels(simulate);

  auto* clean = app.add_subcommand("clean-faces", "Remove faces hidden from every view");
  add_mesh_input(clean);
  add_common(clean);
  clean->add_option("-o,--output", c.output, "Cleaned OFF path")->required();
  clean->add_option("--report", c.report, "JSON removal report");

  auto* bench = app.add_subcommand("bench", "Time evaluate_model over views and resolutions");
  bench->add_option("inputs", c.inputs, "Mesh files")->required()->check(CLI::ExistingFile);
  add_common(bench);
  bench->add_option("--bench-views", c.bench_views, "View counts")->delimiter(',');
  bench->add_option("--bench-resolutions", c.bench_resolutions, "Resolutions")->delimiter(',');
  bench->add_option("--runs", c.runs, "Runs per cell (mean reported)");

  auto* labels = app.add_subcommand("labels", "Dump the label set and chosen targets");
  labels->add_option("record", c.inputs, "Stored record (.json)")
      ->required()
      ->expected(1)
      ->check(CLI::ExistingFile);
  labels->add_option("--pred", c.prediction, "Prediction x,y,z")->delimiter(',')->expected(3);
  add_measures(labels);
  add_labels(labels);

  auto* render = app.add_subcommand("render", "Rasterize one view");
  add_mesh_input(render);
  add_common(render);
  render->add_option("--view-index", c.view_index, "Index into the view sphere");
  render->add_option("--dump-buffer", c.dump_buffer, "Write the item buffer as PGM");

  auto* points = app.add_subcommand("sample-points", "Sample a point cloud from the surface");
  add_mesh_input(points);
  points->add_option("--points", c.points, "Uniform surface samples")->check(CLI::PositiveNumber);
  points->add_option("--fps", c.fps_points, "Farthest point subsample size (0: off)");
  points->add_option("--seed", c.seed, "Sampling seed");
  points->add_flag("--rotate", c.rotate, "Apply a seeded random rotation first");
  points->add_option("--format", c.point_format, "xyz or bin");
  points->add_option("-o,--output", c.output, "Output path")->required();
  points->add_option("--face-warning", c.face_warning, "Warn above this many faces");

  auto usage = [&](const std::string& message) {
    err << Json{{"error", "usage"}, {"message", message}}.dump() << '\n';
    return kExitUsage;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kEngineVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return usage(e.what());
  }

  using Command = int (*)(const RunConfig&, std::ostream&, std::ostream&);
  const std::pair<CLI::App*, Command> table[] = {
      {sample, cmd_sample_vq},     {best, cmd_best_view},      {simulate, cmd_simulate_labels},
      {clean, cmd_clean_faces},    {bench, cmd_bench},         {labels, cmd_labels},
      {render, cmd_render},        {points, cmd_sample_points},
  };
  try {
    for (const auto& [sub, fn] : table) {
      if (sub->parsed()) {
        c.command = sub->get_name();
        return fn(c, out, err);
      }
    }
    return usage("no subcommand given");
  } catch (const UsageError& e) {
    return usage(e.what());
  } catch (const Error& e) {
    err << Json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << Json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
    return kExitRuntime;
  }
}

}  // namespace vqe::cli
