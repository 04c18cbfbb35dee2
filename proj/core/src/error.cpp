// Copyright 2026 The qdemon Authors
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

#include "qdemon/error.hpp"

namespace qdemon {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_parameter:
      return "invalid-parameter";
    case ErrorCode::state_invalid:
      return "state-invalid";
    case ErrorCode::integration_diverged:
      return "integration-diverged";
    case ErrorCode::no_signal:
      return "no-signal";
    case ErrorCode::divergent_information:
      return "divergent-information";
    case ErrorCode::mode_mismatch:
      return "mode-mismatch";
    case ErrorCode::config:
      return "config";
  }
  return "unknown";
}

}  // namespace qdemon
