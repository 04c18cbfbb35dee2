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

#include "qdemon/bloch.hpp"

#include <algorithm>
#include <string>

#include "qdemon/error.hpp"

namespace qdemon {
namespace {

double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

}  // namespace

BlochState thermal_state(double beta) {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw Error(ErrorCode::invalid_parameter,
                "thermal_state: beta must be finite and >= 0, got " + std::to_string(beta));
  }
  return {0.0, 0.0, std::tanh(beta / 2.0)};
}

Probabilities eigen_probs(const BlochState& s) {
  const double l = s.length();
  if (!(l <= 1.0 + kLengthSlack)) {
    throw Error(ErrorCode::state_invalid,
                "Bloch length " + std::to_string(l) + " exceeds 1");
  }
  const double lc = std::min(l, 1.0);
  return {(1.0 + lc) / 2.0, (1.0 - lc) / 2.0};
}

Probabilities energy_probs(const BlochState& s) {
  return {(1.0 + s.z) / 2.0, (1.0 - s.z) / 2.0};
}

double energy_prob(const BlochState& s, EnergyOutcome level) {
  return level == EnergyOutcome::ground ? (1.0 + s.z) / 2.0 : (1.0 - s.z) / 2.0;
}

double binary_entropy(double p) { return -xlogx(p) - xlogx(1.0 - p); }

double von_neumann_entropy(const BlochState& s) {
  const auto [plus, minus] = eigen_probs(s);
  return -xlogx(plus) - xlogx(minus);
}

BlochState rotate_y(const BlochState& s, double theta) {
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  return {s.x * c - s.z * sn, s.y, s.x * sn + s.z * c};
}

double purity(const BlochState& s) {
  const double l = s.length();
  return (1.0 + l * l) / 2.0;
}

bool clamp_to_sphere(BlochState& s) {
  const double l = s.length();
  if (l <= 1.0) return false;
  s.x /= l;
  s.y /= l;
  s.z /= l;
  return true;
}

}  // namespace qdemon
