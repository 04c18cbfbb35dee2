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

#include "qdemon/info.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "qdemon/error.hpp"

namespace qdemon {
namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

// Two-pass mean and standard error, summed in index order.
MeanSe mean_se(std::span<const double> v) {
  if (std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end()) {
    return {v.front(), 0.0};
  }
  const auto n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace

InfoBounds info_bounds(const BlochState& rho0) {
  const double s0 = von_neumann_entropy(rho0);
  return {s0 - std::numbers::ln2, s0};
}

InfoSeries info_trajectory(const BlochState& rho0, std::span<const BlochState> demon_path,
                           std::span<const double> times,
                           std::span<const BlochState> omni_path) {
  if (demon_path.empty()) {
    throw Error(ErrorCode::invalid_parameter, "info_trajectory: empty demon path");
  }
  const double s0 = von_neumann_entropy(rho0);
  InfoSeries out;
  out.times.assign(times.begin(), times.end());
  out.i_tilde.reserve(demon_path.size());
  out.s_demon.reserve(demon_path.size());
  for (const auto& s : demon_path) {
    const double sd = von_neumann_entropy(s);
    out.s_demon.push_back(sd);
    out.i_tilde.push_back(s0 - sd);
  }
  out.s_omni.reserve(omni_path.size());
  for (const auto& s : omni_path) out.s_omni.push_back(von_neumann_entropy(s));
  return out;
}

double info_outcome(EnergyOutcome j, const BlochState& rho_final, EnergyOutcome i,
                    const BlochState& rho0) {
  const double pi = energy_prob(rho_final, i);
  const double pj = energy_prob(rho0, j);
  if (!(pi > 0.0) || !(pj > 0.0)) {
    throw Error(ErrorCode::divergent_information,
                "info_outcome: outcome has zero probability");
  }
  return std::log(pi) - std::log(pj);
}

ClampedInfo info_outcome_clamped(EnergyOutcome j, const BlochState& rho_final,
                                 EnergyOutcome i, const BlochState& rho0) {
  double pi = energy_prob(rho_final, i);
  double pj = energy_prob(rho0, j);
  bool flagged = false;
  if (pi < kProbabilityFloor) {
    pi = kProbabilityFloor;
    flagged = true;
  }
  if (pj < kProbabilityFloor) {
    pj = kProbabilityFloor;
    flagged = true;
  }
  return {std::log(pi) - std::log(pj), flagged};
}

InfoSummary mean_info(std::span<const InfoSeries> batch) {
  if (batch.size() < 2) {
    throw Error(ErrorCode::invalid_parameter, "mean_info: need at least two trajectories");
  }
  std::vector<double> finals;
  finals.reserve(batch.size());
  for (const auto& s : batch) finals.push_back(s.final_info());
  const auto [mean, se] = mean_se(finals);

  InfoSummary out;
  out.mean_i = mean;
  out.se_i = se;
  out.n = batch.size();

  const std::size_t len = batch.front().i_tilde.size();
  const bool aligned = std::all_of(batch.begin(), batch.end(),
                                   [&](const InfoSeries& s) { return s.i_tilde.size() == len; });
  if (aligned) {
    out.mean_curve.assign(len, 0.0);
    for (const auto& s : batch) {
      for (std::size_t t = 0; t < len; ++t) out.mean_curve[t] += s.i_tilde[t];
    }
    for (double& v : out.mean_curve) v /= static_cast<double>(batch.size());
  }
  return out;
}

InfoSummary gain_loss(std::span<const InfoSeries> batch, const BlochState& rho0) {
  for (const auto& s : batch) {
    if (s.s_omni.empty()) {
      throw Error(ErrorCode::mode_mismatch,
                  "gain_loss: omniscient entropies missing (hierarchy mode required)");
    }
  }
  InfoSummary out = mean_info(batch);
  const double s0 = von_neumann_entropy(rho0);
  std::vector<double> gain;
  std::vector<double> loss;
  gain.reserve(batch.size());
  loss.reserve(batch.size());
  for (const auto& s : batch) {
    gain.push_back(s0 - s.s_omni.back());
    loss.push_back(s.s_demon.back() - s.s_omni.back());
  }
  const auto g = mean_se(gain);
  const auto l = mean_se(loss);
  out.i_gain = g.mean;
  out.se_gain = g.se;
  out.i_loss = l.mean;
  out.se_loss = l.se;
  return out;
}

}  // namespace qdemon
