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

#include "vqe/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "vqe/errors.hpp"

namespace vqe {
namespace {

using nlohmann::json;

constexpr const char* kFormatName = "vqe-record";
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void append_double(std::string& out, double value) {
  if (!std::isfinite(value)) {
    out += "null";
    return;
  }
  if (value == 0.0 && std::signbit(value)) {
    out += "-0.0";  // "-0" would read back as the integer 0
    return;
  }
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  out.append(buf, r.ptr);
}

void append_string(std::string& out, const std::string& value) { out += json(value).dump(); }

void append_array(std::string& out, const std::vector<double>& values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    append_double(out, values[i]);
  }
  out += ']';
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_values(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_bits(a[i], b[i])) return false;
  }
  return true;
}

[[noreturn]] void schema_error(const std::string& key, const std::string& what) {
  throw Error(ErrorKind::kSchema, "key '" + key + "': " + what);
}

const json& member(const json& parent, const std::string& name, const std::string& key) {
  if (!parent.is_object() || !parent.contains(name)) schema_error(key, "missing");
  return parent.at(name);
}

std::string get_string(const json& parent, const std::string& name, const std::string& key) {
  const json& j = member(parent, name, key);
  if (!j.is_string()) schema_error(key, "expected a string");
  return j.get<std::string>();
}

double get_double(const json& parent, const std::string& name, const std::string& key) {
  const json& j = member(parent, name, key);
  if (!j.is_number()) schema_error(key, "expected a number");
  return j.get<double>();
}

std::size_t get_index(const json& parent, const std::string& name, const std::string& key) {
  const json& j = member(parent, name, key);
  if (!j.is_number_unsigned()) schema_error(key, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<double> get_values(const json& parent, const std::string& name,
                               const std::string& key) {
  const json& j = member(parent, name, key);
  if (!j.is_array()) schema_error(key, "expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (e.is_null()) {
      out.push_back(kNaN);
    } else if (e.is_number()) {
      out.push_back(e.get<double>());
    } else {
      schema_error(key, "array entries must be numbers or null");
    }
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path.string());
}

double parse_field(std::string_view field, std::size_t line) {
  if (field.empty()) return kNaN;
  double value = 0.0;
  const auto r = std::from_chars(field.data(), field.data() + field.size(), value);
  if (r.ec != std::errc() || r.ptr != field.data() + field.size()) {
    throw Error(ErrorKind::kFormat,
                "line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

bool records_identical(const ModelRecord& a, const ModelRecord& b) {
  if (a.model_id != b.model_id || a.engine_version != b.engine_version ||
      a.sphere_size != b.sphere_size || !(a.camera.resolution == b.camera.resolution) ||
      !same_bits(a.camera.vertical_fov_deg, b.camera.vertical_fov_deg) ||
      a.camera.distance_rule != b.camera.distance_rule ||
      !same_bits(a.camera.distance_factor, b.camera.distance_factor)) {
    return false;
  }
  for (std::size_t m = 0; m < 4; ++m) {
    const auto& x = a.measures[m];
    const auto& y = b.measures[m];
    if (x.measure != y.measure || x.orientation != y.orientation ||
        x.best_index != y.best_index || x.worst_index != y.worst_index ||
        !same_values(x.raw, y.raw) || !same_values(x.normalized, y.normalized)) {
      return false;
    }
  }
  return true;
}

ModelRecord make_record(std::string model_id, const ModelEvaluation& evaluation,
                        std::size_t sphere_size, const EvaluationOptions& options) {
  ModelRecord record;
  record.model_id = std::move(model_id);
  record.sphere_size = sphere_size;
  record.camera.resolution = options.resolution;
  record.camera.vertical_fov_deg = options.camera.vertical_fov * 180.0 / kPi;
  record.camera.distance_factor = options.camera.distance_factor;
  for (const auto m : kAllMeasures) {
    const VQMap& map = evaluation.map(m);
    MeasureRecord& out = record.measures[static_cast<std::size_t>(m)];
    out.measure = m;
    out.orientation = map.orientation;
    out.best_index = map.best_index;
    out.worst_index = map.worst_index;
    out.raw = map.raw;
    out.normalized = map.normalized;
    for (std::size_t v = 0; v < map.size(); ++v) {
      if (!map.is_valid(v)) out.raw[v] = kNaN;
    }
  }
  return record;
}

void validate_record(const ModelRecord& record) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::kArgument, what); };
  if (record.sphere_size == 0) fail("sphere size must be positive");
  for (std::size_t m = 0; m < 4; ++m) {
    const MeasureRecord& r = record.measures[m];
    const std::string name(to_string(static_cast<Measure>(m)));
    if (r.measure != static_cast<Measure>(m)) fail(name + ": measures out of order");
    if (r.raw.size() != record.sphere_size || r.normalized.size() != record.sphere_size) {
      fail(name + ": list length differs from sphere size " + std::to_string(record.sphere_size));
    }
    if (r.best_index >= record.sphere_size || r.worst_index >= record.sphere_size) {
      fail(name + ": best/worst index out of range");
    }
    for (const double v : r.normalized) {
      if (!(v >= 0.0 && v <= 1.0)) fail(name + ": normalized value outside [0, 1]");
    }
    if (r.normalized[r.best_index] != 1.0) fail(name + ": best view is not normalized to 1");
    if (r.best_index != r.worst_index && r.normalized[r.worst_index] != 0.0) {
      fail(name + ": worst view is not normalized to 0");
    }
  }
}

std::string record_to_json(const ModelRecord& record) {
  std::string out = "{\n";
  out += "  \"format\": \"";
  out += kFormatName;
  out += "\",\n  \"version\": " + std::to_string(kRecordVersion) + ",\n";
  out += "  \"engine_version\": ";
  append_string(out, record.engine_version);
  out += ",\n  \"model_id\": ";
  append_string(out, record.model_id);
  out += ",\n  \"sphere\": {\"layout\": \"fibonacci\", \"size\": " +
         std::to_string(record.sphere_size) + "},\n";
  out += "  \"camera\": {\"resolution\": [" + std::to_string(record.camera.resolution.width) +
         ", " + std::to_string(record.camera.resolution.height) + "], \"vertical_fov_deg\": ";
  append_double(out, record.camera.vertical_fov_deg);
  out += ", \"distance_rule\": ";
  append_string(out, record.camera.distance_rule);
  out += ", \"distance_factor\": ";
  append_double(out, record.camera.distance_factor);
  out += "},\n  \"measures\": {\n";
  for (std::size_t m = 0; m < 4; ++m) {
    const MeasureRecord& r = record.measures[m];
    out += "    \"";
    out += to_string(r.measure);
    out += "\": {\n      \"orientation\": \"";
    out += to_string(r.orientation);
    out += "\",\n      \"best_index\": " + std::to_string(r.best_index) +
           ",\n      \"worst_index\": " + std::to_string(r.worst_index) +
           ",\n      \"raw\": ";
    append_array(out, r.raw);
    out += ",\n      \"normalized\": ";
    append_array(out, r.normalized);
    out += m + 1 < 4 ? "\n    },\n" : "\n    }\n";
  }
  out += "  }\n}\n";
  return out;
}

std::string record_to_csv(const ModelRecord& record) {
  const ViewSphere sphere = fibonacci_sphere(record.sphere_size);
  std::string out = "index,x,y,z";
  for (const auto m : kAllMeasures) {
    const std::string name(to_string(m));
    out += "," + name + "_raw," + name + "_norm";
  }
  out += '\n';
  for (std::size_t v = 0; v < record.sphere_size; ++v) {
    out += std::to_string(v);
    for (int k = 0; k < 3; ++k) {
      out += ',';
      append_double(out, sphere[v][k]);
    }
    for (const auto& r : record.measures) {
      out += ',';
      if (std::isfinite(r.raw[v])) append_double(out, r.raw[v]);
      out += ',';
      append_double(out, r.normalized[v]);
    }
    out += '\n';
  }
  return out;
}

std::filesystem::path csv_sidecar(const std::filesystem::path& path) {
  auto csv = path;
  csv.replace_extension(".csv");
  return csv;
}

void write_record(const ModelRecord& record, const std::filesystem::path& path) {
  validate_record(record);
  if (csv_sidecar(path) == path) {
    throw Error(ErrorKind::kArgument, "record path must not end in .csv: " + path.string());
  }
  write_file(path, record_to_json(record));
  write_file(csv_sidecar(path), record_to_csv(record));
}

ModelRecord parse_record_json(const std::string& text, std::vector<std::string>* warnings) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kSchema, std::string("invalid JSON: ") + e.what());
  }
  if (get_string(doc, "format", "format") != kFormatName) schema_error("format", "unknown format");
  const json& version = member(doc, "version", "version");
  if (!version.is_number_integer()) schema_error("version", "expected an integer");
  if (version.get<int>() != kRecordVersion && warnings) {
    warnings->push_back("record version " + std::to_string(version.get<int>()) +
                        " differs from supported version " + std::to_string(kRecordVersion));
  }

  ModelRecord record;
  record.engine_version = get_string(doc, "engine_version", "engine_version");
  record.model_id = get_string(doc, "model_id", "model_id");
  const json& sphere = member(doc, "sphere", "sphere");
  if (get_string(sphere, "layout", "sphere.layout") != "fibonacci") {
    schema_error("sphere.layout", "only the fibonacci layout is supported");
  }
  record.sphere_size = get_index(sphere, "size", "sphere.size");

  const json& camera = member(doc, "camera", "camera");
  const json& res = member(camera, "resolution", "camera.resolution");
  if (!res.is_array() || res.size() != 2 || !res[0].is_number_unsigned() ||
      !res[1].is_number_unsigned()) {
    schema_error("camera.resolution", "expected [width, height]");
  }
  record.camera.resolution = {res[0].get<std::uint32_t>(), res[1].get<std::uint32_t>()};
  record.camera.vertical_fov_deg = get_double(camera, "vertical_fov_deg", "camera.vertical_fov_deg");
  record.camera.distance_rule = get_string(camera, "distance_rule", "camera.distance_rule");
  record.camera.distance_factor = get_double(camera, "distance_factor", "camera.distance_factor");

  const json& measures = member(doc, "measures", "measures");
  for (const auto m : kAllMeasures) {
    const std::string name(to_string(m));
    const std::string key = "measures." + name;
    const json& j = member(measures, name, key);
    MeasureRecord& r = record.measures[static_cast<std::size_t>(m)];
    r.measure = m;
    const std::string orientation = get_string(j, "orientation", key + ".orientation");
    if (orientation == to_string(Orientation::kMaxIsBest)) {
      r.orientation = Orientation::kMaxIsBest;
    } else if (orientation == to_string(Orientation::kMinIsBest)) {
      r.orientation = Orientation::kMinIsBest;
    } else {
      schema_error(key + ".orientation", "unknown orientation '" + orientation + "'");
    }
    r.best_index = get_index(j, "best_index", key + ".best_index");
    r.worst_index = get_index(j, "worst_index", key + ".worst_index");
    r.raw = get_values(j, "raw", key + ".raw");
    r.normalized = get_values(j, "normalized", key + ".normalized");
    if (r.raw.size() != record.sphere_size) schema_error(key + ".raw", "length differs from sphere.size");
    if (r.normalized.size() != record.sphere_size) {
      schema_error(key + ".normalized", "length differs from sphere.size");
    }
  }
  try {
    validate_record(record);
  } catch (const Error& e) {
    throw Error(ErrorKind::kSchema, std::string("measures: ") + e.what());
  }
  return record;
}

ModelRecord read_record(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  const std::string text = read_file(path);
  try {
    return parse_record_json(text, warnings);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

RecordTable parse_record_csv(const std::string& text) {
  RecordTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line.rfind("index,x,y,z,VE_raw", 0) != 0) {
        throw Error(ErrorKind::kFormat, "line 1: unexpected header");
      }
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 12) {
      throw Error(ErrorKind::kFormat, "line " + std::to_string(line_no) + ": expected 12 fields");
    }
    table.directions.emplace_back(parse_field(fields[1], line_no), parse_field(fields[2], line_no),
                                  parse_field(fields[3], line_no));
    for (std::size_t m = 0; m < 4; ++m) {
      table.raw[m].push_back(parse_field(fields[4 + 2 * m], line_no));
      table.normalized[m].push_back(parse_field(fields[5 + 2 * m], line_no));
    }
  }
  return table;
}

RecordTable read_record_csv(const std::filesystem::path& path) {
  try {
    return parse_record_csv(read_file(path));
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace vqe
