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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdemon {

enum class ErrorCode {
  invalid_parameter,
  state_invalid,
  integration_diverged,
  no_signal,
  divergent_information,
  mode_mismatch,
  config,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code. Config errors also carry the
/// offending key in `key()`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string key = {})
      : std::runtime_error(message), code_(code), key_(std::move(key)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& key() const noexcept { return key_; }

 private:
  ErrorCode code_;
  std::string key_;
};

}  // namespace qdemon
