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

#include <cstdint>
#include <numbers>
#include <vector>

#include "qdemon/bloch.hpp"
#include "qdemon/info.hpp"
#include "qdemon/params.hpp"
#include "qdemon/rng.hpp"
#include "qdemon/sme.hpp"

namespace qdemon {

/// Half-width of the randomized-feedback acceptance window.
inline constexpr double kFeedbackWindow = std::numbers::pi / 20.0;

/// One run of: thermal preparation, first energy projection, monitored drive,
/// feedback rotation, second energy projection.
struct ProtocolOutcome {
  std::uint64_t id = 0;

  EnergyOutcome j_init = EnergyOutcome::ground;
  bool tpm_recorded = true;  // false when initial_projection is off
  EnergyOutcome i_final = EnergyOutcome::ground;
  double work = 0.0;  // E(i_final) - E(j_init)

  double theta_fb = 0.0;
  double theta_applied = 0.0;
  bool accepted = true;
  bool feedback_degenerate = false;

  BlochState demon_final_pre_fb;
  BlochState demon_final_post_fb;
  BlochState omni_final_post_fb;
  BlochState true_final_post_fb;

  BlochState info_state;       // demon state the final information refers to
  double info_fin = 0.0;       // ln P_i(demon) - ln P_j(rho0), nats
  bool info_flagged = false;   // a probability hit kProbabilityFloor

  InfoSeries info_path;
  double demon_length_min = 1.0;
  double demon_length_max = 0.0;
  std::size_t clamp_events = 0;

  MonitoredSegment segment;  // paths only when path_stride > 0
};

/// Energy eigenstate as a Bloch vector: ground -> +z, excited -> -z.
BlochState pole(EnergyOutcome e) noexcept;

/// Ground with probability 1/(1 + e^-beta).
EnergyOutcome sample_initial(double beta, Rng& rng);

struct FeedbackAngle {
  double theta = 0.0;
  bool degenerate = false;  // x = z = 0, any rotation is equivalent
};

/// theta = atan2(x, z), which rotate_y maps onto the +z axis.
FeedbackAngle feedback_angle(const BlochState& s);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a) noexcept;

struct FeedbackResult {
  double theta_applied = 0.0;
  bool accepted = true;
};

/// Ideal: apply theta_star. Randomized: draw phi uniform on [0, 2pi) and
/// accept iff |wrap(phi - theta_star)| <= pi/20.
FeedbackResult apply_feedback(FeedbackMode mode, double theta_star, Rng& rng);

/// Ground with probability (1 + z)/2.
EnergyOutcome project_energy(const BlochState& true_state, Rng& rng);

/// Runs trajectory `index` with streams derived from (p.seed, index).
ProtocolOutcome run_protocol(const SimParams& p, std::uint64_t index);

}  // namespace qdemon
