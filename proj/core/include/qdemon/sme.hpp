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
#include "qdemon/params.hpp"
#include "qdemon/rng.hpp"

namespace qdemon {

// Monitored-qubit dynamics in Bloch form.
//
// Drive and dephasing (total strength k):
//   dx = (omega_r z - 2k x) dt,  dy = -2k y dt,  dz = -omega_r x dt.
// A sigma_z channel of strength k_obs observed with unit efficiency adds
//   dx += -2 sqrt(k_obs) x z dV,  dy += -2 sqrt(k_obs) y z dV,
//   dz += 2 sqrt(k_obs) (1 - z^2) dV,
// with dV = sqrt(4 k_obs) (r - z_est) dt the innovation of readout sample r,
// and r dt = z_true dt + dW / sqrt(4 k_obs).

struct StepResult {
  BlochState state;
  bool clamped = false;
};

/// One innovation for one sigma_z channel.
struct ChannelInnovation {
  double strength = 0.0;  // k_obs, rad/us
  double dv = 0.0;        // innovation, sqrt(us)
};

/// Deterministic Euler step of the unconditioned master equation.
BlochState lindblad_step(const BlochState& s, const SimParams& p, double dt);

/// Euler-Maruyama step: drift plus the measurement update of one channel.
/// Renormalizes to length 1 (clamped = true) when the result leaves the
/// sphere; throws integration_diverged on a non-finite result.
StepResult filter_step(const BlochState& s, double dv, double k_obs, const SimParams& p,
                       double dt);

/// Same, with any number of simultaneously observed channels.
StepResult filter_step(const BlochState& s, std::span<const ChannelInnovation> channels,
                       const SimParams& p, double dt);

/// Readout sample r = z_true + dW / (sqrt(4 k_obs) dt). Throws no_signal for
/// k_obs <= 0.
double sample_record(double z_true, double dw, double k_obs, double dt);

/// dV = sqrt(4 k_obs) (r - z_est) dt; the exact inverse of sample_record.
double innovation(double r, double z_est, double k_obs, double dt);

/// One record consumed by the measurement-operator map.
struct ChannelRecord {
  double strength = 0.0;  // k_obs, rad/us
  double r = 0.0;         // readout sample
};

/// Normalized measurement-operator step
///
///   M = (1 - k dt/2 + (S^2 - sum_j k_j dt)/2) 1 + S sz - i tan(omega_r dt/2) sy,
///   S = sum_j sqrt(k_j) dy_j,  dy_j = 2 sqrt(k_j) r_j dt,
///   rho' = (M rho M^dag + k_u dt sz rho sz) / Tr[...],
///
/// where the sum runs over the observed channels and k_u is the total strength
/// of unobserved channels. The dephasing term uses p.k, which callers keep
/// equal to sum_j k_j + k_u. The map is completely positive, so positivity
/// holds exactly and pure states stay pure when k_u = 0. Its first-order
/// expansion is filter_step.
StepResult kraus_step(const BlochState& s, std::span<const ChannelRecord> observed,
                      double k_unobserved, const SimParams& p, double dt);

/// Classical fourth-order Runge-Kutta solution of the unconditioned master
/// equation from `s` over time `t`, using `substeps` steps.
BlochState integrate_lindblad(const BlochState& s, const SimParams& p, double t,
                              std::size_t substeps = 1000);

/// Unconditioned step of the chosen integrator (no records at all).
BlochState unmonitored_step(const BlochState& s, const SimParams& p, double dt);

/// Per-trajectory Wiener increments for the observed and hidden channels,
/// each from its own stream so that step refinement consumes them in the
/// same order.
class WienerSource {
 public:
  WienerSource(std::uint64_t seed, std::uint64_t trajectory, unsigned substeps = 1);

  double observed(double dt) { return draw(observed_, dt); }
  double hidden(double dt) { return draw(hidden_, dt); }

 private:
  double draw(Rng& rng, double dt);

  Rng observed_;
  Rng hidden_;
  unsigned substeps_;
};

/// One trajectory of the monitored drive.
///
/// Paths hold the state after every `path_stride`-th step (so a 2000-step run
/// with stride 20 keeps 100 points ending at tau); `times` gives the matching
/// instants. In filter_only mode only the demon track exists: true_path and
/// omni_path stay empty and true_final is the demon state.
struct MonitoredSegment {
  SegmentMode mode = SegmentMode::hierarchy;
  std::size_t steps = 0;

  std::vector<double> records;         // observed readout, when kept
  std::vector<double> hidden_records;  // hidden readout, when kept

  std::vector<double> times;
  std::vector<BlochState> true_path;
  std::vector<BlochState> omni_path;
  std::vector<BlochState> demon_path;

  BlochState true_final;
  BlochState omni_final;
  BlochState demon_final;

  // Extremes of the demon's Bloch length over every step, t = 0 included.
  double demon_length_min = 1.0;
  double demon_length_max = 0.0;

  std::size_t clamp_events = 0;

  bool has_hierarchy() const noexcept { return mode == SegmentMode::hierarchy; }
};

/// Integrates one segment of duration p.tau. In hierarchy mode `start_true`
/// must be pure; `start_prior` seeds both filters.
MonitoredSegment run_monitored_segment(const SimParams& p, const BlochState& start_true,
                                       const BlochState& start_prior, WienerSource& noise);

}  // namespace qdemon
