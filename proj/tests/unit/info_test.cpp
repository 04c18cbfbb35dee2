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

#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"
#include "qdemon/batch.hpp"
#include "qdemon/error.hpp"

namespace qdemon {
namespace {

constexpr double kLn2 = std::numbers::ln2;

std::vector<InfoSeries> info_batch(const SimParams& p) {
  std::vector<InfoSeries> out;
  for (const auto& o : run_batch(p, 0)) out.push_back(o.info_path);
  return out;
}

TEST(InfoTrajectory, Examples) {
  const BlochState rho0 = thermal_state(4.0);
  const std::vector<BlochState> constant(5, rho0);
  for (double v : info_trajectory(rho0, constant).i_tilde) EXPECT_EQ(v, 0.0);

  const std::vector<BlochState> pure{BlochState{0.6, 0, 0.8}};
  EXPECT_NEAR(info_trajectory(rho0, pure).final_info(), 0.090095, 1e-6);

  const std::vector<BlochState> mixed{BlochState{0, 0, 0}};
  EXPECT_NEAR(info_trajectory(rho0, mixed).final_info(), -0.603052, 1e-6);
}

TEST(InfoTrajectory, IdentityAndBounds) {
  SimParams p;
  p.path_stride = 10;
  p.n_traj = 50;
  const BlochState rho0 = thermal_state(p.beta);
  const InfoBounds b = info_bounds(rho0);
  EXPECT_NEAR(b.upper - b.lower, kLn2, 1e-15);
  const double s0 = von_neumann_entropy(rho0);
  for (const auto& series : info_batch(p)) {
    ASSERT_EQ(series.i_tilde.size(), 200u);
    ASSERT_EQ(series.times.size(), 200u);
    ASSERT_EQ(series.s_omni.size(), 200u);
    for (std::size_t t = 0; t < series.i_tilde.size(); ++t) {
      EXPECT_EQ(series.i_tilde[t], s0 - series.s_demon[t]);
      EXPECT_GE(series.i_tilde[t], b.lower - 1e-9);
      EXPECT_LE(series.i_tilde[t], b.upper + 1e-9);
    }
  }
}

TEST(InfoTrajectory, EmptyPath) {
  EXPECT_THROW(info_trajectory(BlochState{}, {}), Error);
}

TEST(InfoOutcome, Examples) {
  const BlochState rho0 = thermal_state(4.0);
  EXPECT_EQ(info_outcome(EnergyOutcome::ground, rho0, EnergyOutcome::ground, rho0), 0.0);
  const BlochState final_state{0, 0, 2 * 0.999 - 1};
  EXPECT_NEAR(info_outcome(EnergyOutcome::ground, final_state, EnergyOutcome::ground, rho0),
              0.017149, 1e-6);
}

TEST(InfoOutcome, Divergent) {
  const BlochState rho0 = thermal_state(4.0);
  try {
    info_outcome(EnergyOutcome::excited, BlochState{0, 0, 1}, EnergyOutcome::excited, rho0);
    FAIL() << "expected divergent_information";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::divergent_information);
  }
  const ClampedInfo c =
      info_outcome_clamped(EnergyOutcome::excited, BlochState{0, 0, 1}, EnergyOutcome::excited, rho0);
  EXPECT_TRUE(c.flagged);
  EXPECT_NEAR(c.value, std::log(1e-12) - std::log(energy_prob(rho0, EnergyOutcome::excited)),
              1e-12);
  EXPECT_FALSE(
      info_outcome_clamped(EnergyOutcome::ground, rho0, EnergyOutcome::ground, rho0).flagged);
}

TEST(MeanInfo, Identical) {
  InfoSeries s;
  s.i_tilde = {0.0, 0.1, -0.2};
  s.s_demon = {0.0, 0.0, 0.0};
  const std::vector<InfoSeries> batch(10, s);
  const InfoSummary m = mean_info(batch);
  EXPECT_EQ(m.se_i, 0.0);
  EXPECT_DOUBLE_EQ(m.mean_i, -0.2);
  ASSERT_EQ(m.mean_curve.size(), 3u);
  EXPECT_DOUBLE_EQ(m.mean_curve[1], 0.1);
  EXPECT_THROW(mean_info(std::vector<InfoSeries>(1, s)), Error);
}

TEST(MeanInfo, NoMeasurement) {
  SimParams p;
  p.k = 0.0;
  p.n_traj = 200;
  const auto batch = info_batch(p);
  const InfoSummary m = gain_loss(batch, thermal_state(p.beta));
  // Rotation preserves the Bloch length up to rounding.
  EXPECT_LE(std::abs(m.mean_i), 1e-12);
  EXPECT_LE(std::abs(m.i_gain), 1e-12);
  EXPECT_LE(std::abs(m.i_loss), 1e-12);
}

TEST(GainLoss, EfficientDetectorLosesNothing) {
  SimParams p;
  p.eta = 1.0;
  p.n_traj = 200;
  const InfoSummary m = gain_loss(info_batch(p), thermal_state(p.beta));
  EXPECT_LE(std::abs(m.i_loss), 1e-10);
  EXPECT_NEAR(m.i_gain, m.mean_i, 1e-10);
}

TEST(GainLoss, DefaultsLoseMoreThanTheyGain) {
  SimParams p;
  p.n_traj = 400;
  const BlochState rho0 = thermal_state(p.beta);
  const InfoSummary m = gain_loss(info_batch(p), rho0);
  EXPECT_NEAR(m.i_gain - m.i_loss, m.mean_i, 1e-12);
  EXPECT_GE(m.i_gain, -3.0 * m.se_gain);
  EXPECT_GE(m.i_loss, -3.0 * m.se_loss);
  EXPECT_GT(m.i_loss, m.i_gain);
  EXPECT_LT(m.mean_i, 0.0);
  EXPECT_LE(m.mean_i, von_neumann_entropy(rho0) + 3.0 * m.se_i);
}

TEST(GainLoss, RequiresOmniscientTrack) {
  SimParams p;
  p.mode = SegmentMode::filter_only;
  p.n_traj = 5;
  try {
    gain_loss(info_batch(p), thermal_state(p.beta));
    FAIL() << "expected mode_mismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::mode_mismatch);
  }
}

}  // namespace
}  // namespace qdemon
