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
#include <string>
#include <vector>

#include "vqe/measures.hpp"
#include "vqe/sampling.hpp"
#include "vqe/types.hpp"

namespace vqe {

/// Schema version written into every record.
inline constexpr int kRecordVersion = 1;

struct CameraProtocol {
  Resolution resolution{1024, 1024};
  double vertical_fov_deg = 90.0;
  std::string distance_rule = "half_bbox_diagonal";
  double distance_factor = 0.5;

  friend bool operator==(const CameraProtocol&, const CameraProtocol&) = default;
};

/// One measure over the sphere. Views excluded from the measure carry a NaN
/// raw value (null in JSON, empty in CSV) and normalized value 0.
struct MeasureRecord {
  Measure measure = Measure::kVE;
  Orientation orientation = Orientation::kMaxIsBest;
  std::size_t best_index = 0;
  std::size_t worst_index = 0;
  std::vector<double> raw;
  std::vector<double> normalized;
};

struct ModelRecord {
  std::string model_id;
  std::string engine_version = kEngineVersion;
  std::size_t sphere_size = 0;  ///< Fibonacci layout
  CameraProtocol camera;
  std::array<MeasureRecord, 4> measures;  ///< indexed by Measure

  const MeasureRecord& measure(Measure m) const {
    return measures[static_cast<std::size_t>(m)];
  }
};

/// Bitwise equality of all fields, so NaN placeholders compare equal.
bool records_identical(const ModelRecord& a, const ModelRecord& b);

ModelRecord make_record(std::string model_id, const ModelEvaluation& evaluation,
                        std::size_t sphere_size, const EvaluationOptions& options);

/// Throws kArgument naming the first violated invariant: list lengths,
/// normalized range, best/worst values, measure order.
void validate_record(const ModelRecord& record);

/// Writes `path` (JSON) and the sidecar `path` with extension .csv. The
/// record is validated first, so nothing is written for an invalid record.
void write_record(const ModelRecord& record, const std::filesystem::path& path);
std::string record_to_json(const ModelRecord& record);
std::string record_to_csv(const ModelRecord& record);

/// Throws kSchema naming the offending key. A version other than
/// kRecordVersion appends a message to `warnings` instead of failing.
ModelRecord read_record(const std::filesystem::path& path,
                        std::vector<std::string>* warnings = nullptr);
ModelRecord parse_record_json(const std::string& text,
                              std::vector<std::string>* warnings = nullptr);

/// Sidecar content: directions plus raw and normalized values per measure.
struct RecordTable {
  std::vector<Vec3> directions;
  std::array<std::vector<double>, 4> raw;
  std::array<std::vector<double>, 4> normalized;
};

RecordTable read_record_csv(const std::filesystem::path& path);
RecordTable parse_record_csv(const std::string& text);

/// Sidecar path for a record path.
std::filesystem::path csv_sidecar(const std::filesystem::path& path);

}  // namespace vqe
