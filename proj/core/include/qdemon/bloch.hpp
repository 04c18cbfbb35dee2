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

#include <cmath>
#include <utility>

namespace qdemon {

/// Qubit density matrix rho = (1 + x sx + y sy + z sz) / 2.
///
/// Energy-basis convention: the ground state |0> sits at z = +1, so the
/// ground-state population is (1 + z) / 2. Energies are E0 = 0, E1 = 1 in
/// units of the qubit splitting.
struct BlochState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double length() const noexcept { return std::sqrt(x * x + y * y + z * z); }

  friend bool operator==(const BlochState&, const BlochState&) = default;
};

/// Slack allowed on the Bloch length before a state counts as unphysical.
inline constexpr double kLengthSlack = 1e-9;

enum class EnergyOutcome : int { ground = 0, excited = 1 };

inline constexpr int label(EnergyOutcome e) noexcept { return static_cast<int>(e); }
inline constexpr double energy(EnergyOutcome e) noexcept {
  return static_cast<double>(label(e));
}

struct Probabilities {
  double first = 0.0;
  double second = 0.0;
};

/// Gibbs state at inverse temperature `beta`: (0, 0, tanh(beta/2)).
BlochState thermal_state(double beta);

/// Eigenvalues ((1+l)/2, (1-l)/2) of the density matrix, l the Bloch length.
/// Throws ErrorCode::state_invalid when l exceeds 1 + kLengthSlack.
Probabilities eigen_probs(const BlochState& s);

/// Energy-basis populations (P0, P1) = ((1+z)/2, (1-z)/2).
Probabilities energy_probs(const BlochState& s);

/// Population of one energy level.
double energy_prob(const BlochState& s, EnergyOutcome level);

/// Von Neumann entropy in nats, 0 ln 0 = 0.
double von_neumann_entropy(const BlochState& s);

/// Binary entropy in nats of the pair (p, 1-p).
double binary_entropy(double p);

/// Rotation about y: x' = x cos(theta) - z sin(theta),
/// z' = x sin(theta) + z cos(theta). theta = atan2(x, z) maps the state onto +z.
BlochState rotate_y(const BlochState& s, double theta);

double purity(const BlochState& s);

/// Rescales a state whose length exceeds 1 back onto the sphere. Returns
/// true when a rescale happened.
bool clamp_to_sphere(BlochState& s);

}  // namespace qdemon
