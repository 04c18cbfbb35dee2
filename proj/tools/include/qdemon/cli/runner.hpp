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

#include <iosfwd>
#include <string>
#include <vector>

#include "qdemon/cli/config.hpp"
#include "qdemon/estimators.hpp"
#include "qdemon/protocol.hpp"

namespace qdemon::cli {

/// In-memory contents of the three `run` output files.
struct RunArtifacts {
  std::string trajectories_jsonl;
  std::string summary_json;
  std::string bloch_points_csv;
};

/// Runs cfg.n_traj protocols and renders the outputs without touching disk.
RunArtifacts render_run(const RunConfig& cfg);

/// One JSON line for one trajectory (no trailing newline).
std::string trajectory_line(const ProtocolOutcome& o, const RunConfig& cfg);

/// Renders sweep.csv: `#` echo lines, the column header, one row per point.
std::string render_sweep_csv(const SweepSummary& summary, const RunConfig& cfg);

/// Column header of sweep.csv.
inline constexpr const char* kSweepHeader =
    "axis_value,z0,ft_tpm,ft_tpm_se,ft_weighted,ft_weighted_se,ft_no_info,ft_no_info_se,"
    "mean_i,mean_i_se,i_gain,i_loss,n_accepted,n_flagged";

/// Writes trajectories.jsonl, summary.json and bloch_points.csv into
/// cfg.output_dir. Returns the process exit status; on failure nothing is
/// left behind.
int cmd_run(const RunConfig& cfg, std::ostream& log);

/// Writes sweep.csv into cfg.output_dir.
int cmd_sweep(const RunConfig& cfg, SweepAxis axis, const std::vector<double>& values,
              std::ostream& log);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Reduced-size invariant suites: purity at eta = 1, the Lindblad-average
/// oracle, trajectory information bounds, the unital control, the feedback
/// fluctuation theorem, feedback validation and step-halving convergence.
std::vector<CheckResult> run_checks(const RunConfig& cfg);

/// Prints the check table; exit status 0 iff every check passes.
int cmd_check(const RunConfig& cfg, std::ostream& out);

}  // namespace qdemon::cli
