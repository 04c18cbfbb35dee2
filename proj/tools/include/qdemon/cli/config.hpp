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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qdemon/params.hpp"

namespace qdemon::cli {

/// Run configuration in laboratory units. Converted once to the angular
/// rad/us units of SimParams by to_params().
struct RunConfig {
  double omega_r_mhz = 0.8;
  double k_khz = 51.0;
  double eta = 0.30;
  double beta = 4.0;
  double tau_us = 2.0;
  double dt_ns = 1.0;
  std::uint64_t n_traj = 20000;
  std::uint64_t seed = 1;
  SegmentMode mode = SegmentMode::hierarchy;
  FeedbackMode feedback_mode = FeedbackMode::ideal;
  bool initial_projection = true;
  std::size_t path_stride = 20;
  bool emit_paths = false;
  std::size_t bootstrap_b = 200;
  std::string output_dir = "qdemon_out";

  // Extensions beyond the documented schema.
  Integrator integrator = Integrator::kraus;
  InfoEvaluation info_evaluation = InfoEvaluation::post_feedback;
  unsigned workers = 0;

  SimParams to_params() const;

  /// Number of integration steps; throws like SimParams::steps().
  std::size_t steps() const { return to_params().steps(); }

  /// Throws Error(config) naming the offending key.
  void validate() const;
};

/// All recognized keys, in echo order.
const std::vector<std::string_view>& config_keys();

/// Sets one key from its textual value. Throws Error(config) naming the key
/// on an unknown key or a malformed value.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Parses a flat `key = value` document. `#` starts a comment; values may be
/// quoted. Later keys override earlier ones. The result is validated.
RunConfig parse_config(std::string_view text);
RunConfig parse_config_file(const std::string& path);

/// Canonical (key, value) pairs for every setting that affects results, in
/// config_keys() order. output_dir and workers are left out so that outputs
/// do not depend on where or how wide a run is. Numbers use shortest
/// round-trip formatting.
std::vector<std::pair<std::string, std::string>> echo(const RunConfig& cfg);

/// FNV-1a 64 digest of the canonical echo, as 16 hex digits.
std::string config_digest(const RunConfig& cfg);

}  // namespace qdemon::cli
