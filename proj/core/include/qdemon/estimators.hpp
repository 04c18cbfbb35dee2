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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qdemon/params.hpp"
#include "qdemon/protocol.hpp"
#include "qdemon/rng.hpp"

namespace qdemon {

struct Estimate {
  double mean = 0.0;
  double se = 0.0;
  std::size_t n = 0;
};

struct EstimatorOptions {
  std::size_t bootstrap_b = 200;
  std::uint64_t seed = 1;  // bootstrap resampling streams derive from this
};

/// Nonparametric bootstrap SE of the mean: the standard deviation of `b`
/// resample means. Needs n >= 2 and b >= 100.
double bootstrap_se(std::span<const double> values, std::size_t b, Rng& rng);

/// Sample mean with bootstrap SE; `tag` selects the resampling stream.
Estimate bootstrap_mean(std::span<const double> values, const EstimatorOptions& opts,
                        std::uint64_t tag);

/// Per-trajectory e^{-beta W - I} with the realized outcomes (j, i). Only
/// accepted, unflagged trajectories enter. Throws mode_mismatch if an
/// accepted trajectory has no recorded first projection.
Estimate ft_tpm(std::span<const ProtocolOutcome> batch, double beta,
                const EstimatorOptions& opts = {});

/// Per-trajectory sum_i P_i(rho_demon) e^{-beta (E_i - E_j) - I_ij}, the final
/// outcome averaged out with the demon's own populations.
Estimate ft_weighted(std::span<const ProtocolOutcome> batch, double beta,
                     const EstimatorOptions& opts = {});

/// e^{-beta W} with the information term dropped.
Estimate ft_no_info(std::span<const ProtocolOutcome> batch, double beta,
                    const EstimatorOptions& opts = {});

/// Binned two-point estimator: transition frequencies P(i|j) from the
/// projective outcomes, e^{-I} averaged within each (j, i) bin, combined with
/// the Gibbs weights P_j(0).
struct TransitionTable {
  std::array<std::array<std::size_t, 2>, 2> counts{};   // [j][i]
  std::array<std::array<double, 2>, 2> probability{};  // P(i | j)
  std::array<std::array<double, 2>, 2> mean_exp_neg_info{};
  double ft = 0.0;
};
TransitionTable ft_binned(std::span<const ProtocolOutcome> batch, double beta);

struct WorkHistogram {
  std::size_t minus_one = 0;
  std::size_t zero = 0;
  std::size_t plus_one = 0;
};
WorkHistogram work_histogram(std::span<const ProtocolOutcome> batch);

std::size_t count_accepted(std::span<const ProtocolOutcome> batch);
std::size_t count_flagged(std::span<const ProtocolOutcome> batch);

/// <e^{-beta W}> with the feedback step skipped. Drive plus dephasing is a
/// unital map, so the expected value is exactly 1.
Estimate ft_no_feedback_control(SimParams p, unsigned workers = 0,
                                const EstimatorOptions& opts = {});

enum class SweepAxis { tau, beta };
std::string_view to_string(SweepAxis a) noexcept;

struct SweepPoint {
  double value = 0.0;
  double z0 = 0.0;
  Estimate ft_tpm;
  Estimate ft_weighted;
  Estimate ft_no_info;
  double mean_i = 0.0;
  double mean_i_se = 0.0;
  double i_gain = 0.0;
  double i_loss = 0.0;
  std::size_t n_accepted = 0;
  std::size_t n_flagged = 0;
  std::string error;  // empty unless the point failed
};

struct SweepSummary {
  SweepAxis axis = SweepAxis::tau;
  std::vector<SweepPoint> points;
};

/// Default grids: five durations up to 2 us, and twelve log-spaced beta
/// values spanning z0 = tanh(beta/2) from 0.05 to tanh(2).
std::vector<double> default_tau_grid();
std::vector<double> default_beta_grid();

/// Runs p.n_traj protocols at each value (sorted, nonempty). A failing point
/// keeps its error message and the sweep moves on.
SweepSummary sweep(const SimParams& p, SweepAxis axis, std::span<const double> values,
                   unsigned workers = 0, const EstimatorOptions& opts = {});

}  // namespace qdemon
