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

#include "qdemon/protocol.hpp"

#include <cmath>
#include <numbers>

namespace qdemon {

BlochState pole(EnergyOutcome e) noexcept {
  return {0.0, 0.0, e == EnergyOutcome::ground ? 1.0 : -1.0};
}

EnergyOutcome sample_initial(double beta, Rng& rng) {
  const double p0 = 1.0 / (1.0 + std::exp(-beta));
  return rng.uniform() < p0 ? EnergyOutcome::ground : EnergyOutcome::excited;
}

FeedbackAngle feedback_angle(const BlochState& s) {
  if (s.x == 0.0 && s.z == 0.0) return {0.0, true};
  return {std::atan2(s.x, s.z), false};
}

double wrap_angle(double a) noexcept {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(a, two_pi);  // [-pi, pi]
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

FeedbackResult apply_feedback(FeedbackMode mode, double theta_star, Rng& rng) {
  if (mode == FeedbackMode::ideal) return {theta_star, true};
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  return {phi, std::abs(wrap_angle(phi - theta_star)) <= kFeedbackWindow};
}

EnergyOutcome project_energy(const BlochState& true_state, Rng& rng) {
  return rng.uniform() < (1.0 + true_state.z) / 2.0 ? EnergyOutcome::ground
                                                    : EnergyOutcome::excited;
}

ProtocolOutcome run_protocol(const SimParams& p, std::uint64_t index) {
  p.validate();
  Rng prep(p.seed, index, StreamPurpose::preparation);
  Rng fb_rng(p.seed, index, StreamPurpose::feedback);
  Rng proj(p.seed, index, StreamPurpose::projection);
  WienerSource noise(p.seed, index, p.noise_substeps);

  ProtocolOutcome out;
  out.id = index;

  // Steps 1-2: the demon holds the Gibbs prior; the qubit is in a sampled
  // eigenstate (exact, since the thermal state is an incoherent mixture).
  const BlochState rho0 = thermal_state(p.beta);
  out.j_init = sample_initial(p.beta, prep);
  out.tpm_recorded = p.initial_projection;

  // Step 3.
  out.segment = run_monitored_segment(p, pole(out.j_init), rho0, noise);
  const MonitoredSegment& seg = out.segment;
  out.demon_final_pre_fb = seg.demon_final;
  out.demon_length_min = seg.demon_length_min;
  out.demon_length_max = seg.demon_length_max;
  out.clamp_events = seg.clamp_events;
  out.info_path = info_trajectory(rho0, seg.demon_path, seg.times, seg.omni_path);

  // Step 4: the demon picks the pulse; the same pulse acts on every track.
  if (p.feedback_enabled) {
    const FeedbackAngle angle = feedback_angle(seg.demon_final);
    out.theta_fb = angle.theta;
    out.feedback_degenerate = angle.degenerate;
    const FeedbackResult fb = apply_feedback(p.feedback_mode, angle.theta, fb_rng);
    out.theta_applied = fb.theta_applied;
    out.accepted = fb.accepted;
  }
  out.demon_final_post_fb = rotate_y(seg.demon_final, out.theta_applied);
  out.omni_final_post_fb = rotate_y(seg.omni_final, out.theta_applied);
  out.true_final_post_fb = rotate_y(seg.true_final, out.theta_applied);

  // Step 5.
  out.i_final = project_energy(out.true_final_post_fb, proj);
  out.work = energy(out.i_final) - energy(out.j_init);

  const BlochState& info_state = p.info_evaluation == InfoEvaluation::post_feedback
                                     ? out.demon_final_post_fb
                                     : out.demon_final_pre_fb;
  out.info_state = info_state;
  const ClampedInfo info = info_outcome_clamped(out.j_init, info_state, out.i_final, rho0);
  out.info_fin = info.value;
  out.info_flagged = info.flagged;

  if (p.path_stride == 0) {
    // Nothing beyond the final point was requested; drop the copies.
    out.segment.true_path.clear();
    out.segment.omni_path.clear();
    out.segment.demon_path.clear();
  }
  return out;
}

}  // namespace qdemon
