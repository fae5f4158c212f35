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

#include "vqe/errors.hpp"

namespace vqe {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kFormat: return "format";
    case ErrorKind::kEmptyMesh: return "empty_mesh";
    case ErrorKind::kIndex: return "index";
    case ErrorKind::kArgument: return "argument";
    case ErrorKind::kDegenerateGeometry: return "degenerate_geometry";
    case ErrorKind::kSampling: return "sampling";
    case ErrorKind::kEmptyView: return "empty_view";
    case ErrorKind::kMeasureUndefined: return "measure_undefined";
    case ErrorKind::kInconsistentPrior: return "inconsistent_prior";
    case ErrorKind::kContract: return "contract";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kSchema: return "schema";
  }
  return "unknown";
}

}  // namespace vqe
