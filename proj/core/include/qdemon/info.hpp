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
#include <span>
#include <vector>

#include "qdemon/bloch.hpp"

namespace qdemon {

/// Probability floor used inside estimators; hits are counted, never hidden.
inline constexpr double kProbabilityFloor = 1e-12;

/// Running information of one trajectory, I~(t) = S(rho0) - S(rho_demon(t)).
struct InfoSeries {
  std::vector<double> times;
  std::vector<double> i_tilde;
  std::vector<double> s_demon;
  std::vector<double> s_omni;  // empty unless the omniscient track exists

  double final_info() const { return i_tilde.back(); }
};

struct InfoSummary {
  double mean_i = 0.0;
  double se_i = 0.0;
  double i_gain = 0.0;
  double i_loss = 0.0;
  double se_gain = 0.0;
  double se_loss = 0.0;
  std::size_t n = 0;
  std::vector<double> mean_curve;  // mean I~ at each sampled time
};

/// Lower and upper limits of I~ for prior rho0: [S(rho0) - ln 2, S(rho0)].
struct InfoBounds {
  double lower = 0.0;
  double upper = 0.0;
};
InfoBounds info_bounds(const BlochState& rho0);

/// Entropy in the eigenbasis of each demon state, relative to the prior.
/// `times` and `omni_path` may be empty.
InfoSeries info_trajectory(const BlochState& rho0, std::span<const BlochState> demon_path,
                           std::span<const double> times = {},
                           std::span<const BlochState> omni_path = {});

/// ln P_i(rho_final) - ln P_j(rho0) with energy-basis populations. Throws
/// divergent_information when either probability is zero.
double info_outcome(EnergyOutcome j, const BlochState& rho_final, EnergyOutcome i,
                    const BlochState& rho0);

struct ClampedInfo {
  double value = 0.0;
  bool flagged = false;
};

/// info_outcome with both probabilities floored at kProbabilityFloor.
ClampedInfo info_outcome_clamped(EnergyOutcome j, const BlochState& rho_final,
                                 EnergyOutcome i, const BlochState& rho0);

/// Mean and standard error of the final-time I~ over a batch, plus the mean
/// curve (series must share a time grid for the curve). Needs n >= 2.
InfoSummary mean_info(std::span<const InfoSeries> batch);

/// Gain/loss split from the omniscient track:
///   gain = S(rho0) - mean S(rho_omni),  loss = mean S(rho_demon) - mean S(rho_omni).
/// Also fills mean_i/se_i as mean_info does. Throws mode_mismatch when any
/// series lacks the omniscient entropies.
InfoSummary gain_loss(std::span<const InfoSeries> batch, const BlochState& rho0);

}  // namespace qdemon
