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
#include <numbers>
#include <string_view>

namespace qdemon {

/// How a monitored segment is propagated.
///   hierarchy   - true pure state, both records, omniscient and demon filters
///   filter_only - demon filter alone, innovation drawn directly as N(0, dt)
enum class SegmentMode { hierarchy, filter_only };

enum class FeedbackMode { ideal, randomized };

/// Step map used for every state track.
///   kraus - normalized measurement-operator map, positivity preserving
///   euler - explicit Euler-Maruyama on Bloch coordinates with a clamp
enum class Integrator { kraus, euler };

/// Which demon state the final-outcome information is evaluated on.
enum class InfoEvaluation { post_feedback, pre_feedback };

std::string_view to_string(SegmentMode m) noexcept;
std::string_view to_string(FeedbackMode m) noexcept;
std::string_view to_string(Integrator m) noexcept;
std::string_view to_string(InfoEvaluation m) noexcept;

/// Converts a laboratory frequency f (in MHz) to angular rad/us.
constexpr double angular_from_mhz(double f_mhz) noexcept {
  return 2.0 * std::numbers::pi * f_mhz;
}

/// Physical and numerical parameters. Rates are angular, in rad/us; times in
/// us; energies in units of the qubit splitting.
struct SimParams {
  double omega_r = angular_from_mhz(0.8);    // Rabi drive
  double k = angular_from_mhz(0.051);        // measurement strength
  double eta = 0.30;                         // detector efficiency
  double beta = 4.0;
  double tau = 2.0;
  double dt = 1e-3;

  SegmentMode mode = SegmentMode::hierarchy;
  FeedbackMode feedback_mode = FeedbackMode::ideal;
  Integrator integrator = Integrator::kraus;
  InfoEvaluation info_evaluation = InfoEvaluation::post_feedback;
  bool initial_projection = true;
  bool feedback_enabled = true;

  /// Store state paths every `path_stride` steps; 0 keeps only the final point.
  std::size_t path_stride = 0;
  /// Keep the per-step readout samples in the segment.
  bool keep_records = false;
  /// Each Wiener increment is the sum of this many finer increments. Running
  /// (dt, 2) and (dt/2, 1) with the same seed integrates the same Brownian path.
  unsigned noise_substeps = 1;

  std::uint64_t n_traj = 20000;
  std::uint64_t seed = 1;

  /// Observed-channel strength eta*k.
  double k_observed() const noexcept { return eta * k; }
  /// Hidden-channel strength k - eta*k. The sum with k_observed() can differ
  /// from k by one ulp; dephasing always uses k itself.
  double k_hidden() const noexcept { return k - k_observed(); }

  /// Number of integration steps tau/dt. Throws invalid_parameter when tau/dt
  /// is not an integer to within half an ulp-scale tolerance.
  std::size_t steps() const;

  /// Throws Error(invalid_parameter) naming the first offending field.
  void validate() const;
};

}  // namespace qdemon
