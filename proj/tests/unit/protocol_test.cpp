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
#include <limits>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "qdemon/batch.hpp"

namespace qdemon {
namespace {

constexpr double kPi = std::numbers::pi;

double bernoulli_se(double p, std::size_t n) { return std::sqrt(p * (1.0 - p) / n); }

SimParams short_run() {
  SimParams p;
  p.tau = 0.05;
  return p;
}

TEST(Pole, Values) {
  EXPECT_EQ(pole(EnergyOutcome::ground), (BlochState{0, 0, 1}));
  EXPECT_EQ(pole(EnergyOutcome::excited), (BlochState{0, 0, -1}));
}

TEST(SampleInitial, GibbsWeights) {
  const std::size_t n = 100000;
  for (double beta : {0.0, 4.0}) {
    Rng rng(21);
    std::size_t ground = 0;
    for (std::size_t i = 0; i < n; ++i) ground += sample_initial(beta, rng) == EnergyOutcome::ground;
    const double want = 1.0 / (1.0 + std::exp(-beta));
    EXPECT_NEAR(static_cast<double>(ground) / n, want, 3.0 * bernoulli_se(want, n)) << beta;
  }
  EXPECT_NEAR(1.0 / (1.0 + std::exp(-4.0)), 0.982014, 1e-6);
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    EXPECT_EQ(sample_initial(std::numeric_limits<double>::infinity(), rng), EnergyOutcome::ground);
  }
}

TEST(FeedbackAngle, Examples) {
  EXPECT_EQ(feedback_angle(BlochState{0, 0, 1}).theta, 0.0);
  EXPECT_NEAR(feedback_angle(BlochState{0, 0, -1}).theta, kPi, 1e-15);
  EXPECT_NEAR(feedback_angle(BlochState{1, 0, 0}).theta, kPi / 2, 1e-15);
  const FeedbackAngle mixed = feedback_angle(BlochState{0, 0, 0});
  EXPECT_TRUE(mixed.degenerate);
  EXPECT_EQ(mixed.theta, 0.0);
  EXPECT_FALSE(feedback_angle(BlochState{0.1, 0, 0}).degenerate);
}

TEST(WrapAngle, Range) {
  EXPECT_NEAR(wrap_angle(3 * kPi), kPi, 1e-12);
  EXPECT_NEAR(wrap_angle(-kPi / 3), -kPi / 3, 1e-15);
  EXPECT_NEAR(wrap_angle(2 * kPi + 0.1), 0.1, 1e-12);
  Rng rng(8);
  for (int i = 0; i < 10000; ++i) {
    const double w = wrap_angle(100.0 * (rng.uniform() - 0.5));
    EXPECT_GT(w, -kPi);
    EXPECT_LE(w, kPi);
  }
}

TEST(ApplyFeedback, Ideal) {
  Rng rng(1);
  const FeedbackResult r = apply_feedback(FeedbackMode::ideal, 1.2, rng);
  EXPECT_EQ(r.theta_applied, 1.2);
  EXPECT_TRUE(r.accepted);
}

TEST(ApplyFeedback, RandomizedWindow) {
  Rng rng(13);
  const std::size_t n = 100000;
  std::size_t accepted = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double target = 2 * kPi * (i % 7) / 7.0 - kPi;
    const FeedbackResult r = apply_feedback(FeedbackMode::randomized, target, rng);
    EXPECT_GE(r.theta_applied, 0.0);
    EXPECT_LT(r.theta_applied, 2 * kPi);
    EXPECT_EQ(r.accepted, std::abs(wrap_angle(r.theta_applied - target)) <= kFeedbackWindow);
    accepted += r.accepted;
  }
  EXPECT_NEAR(static_cast<double>(accepted) / n, 0.05, 3.0 * bernoulli_se(0.05, n));
  EXPECT_GT(std::abs(wrap_angle(kPi / 10)), kFeedbackWindow);
}

TEST(ProjectEnergy, Frequencies) {
  Rng rng(2);
  for (int i = 0; i < 10000; ++i) {
    EXPECT_EQ(project_energy(BlochState{0, 0, 1}, rng), EnergyOutcome::ground);
    EXPECT_EQ(project_energy(BlochState{0, 0, -1}, rng), EnergyOutcome::excited);
  }
  const std::size_t n = 100000;
  std::size_t ground = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ground += project_energy(BlochState{0, 0, 0.964}, rng) == EnergyOutcome::ground;
  }
  EXPECT_NEAR(static_cast<double>(ground) / n, 0.98201, 3.0 * bernoulli_se(0.982, n));
}

TEST(RunProtocol, NoDynamicsNoWork) {
  SimParams p;
  p.omega_r = 0.0;
  p.k = 0.0;
  p.tau = 0.1;
  for (std::uint64_t i = 0; i < 300; ++i) {
    const ProtocolOutcome o = run_protocol(p, i);
    EXPECT_EQ(o.i_final, o.j_init);
    EXPECT_EQ(o.work, 0.0);
    EXPECT_EQ(o.info_fin, 0.0);
  }
}

TEST(RunProtocol, OutcomeInvariants) {
  SimParams p = short_run();
  for (FeedbackMode mode : {FeedbackMode::ideal, FeedbackMode::randomized}) {
    p.feedback_mode = mode;
    for (std::uint64_t i = 0; i < 500; ++i) {
      const ProtocolOutcome o = run_protocol(p, i);
      EXPECT_EQ(o.work, energy(o.i_final) - energy(o.j_init));
      EXPECT_TRUE(o.work == -1.0 || o.work == 0.0 || o.work == 1.0);
      if (mode == FeedbackMode::ideal) EXPECT_TRUE(o.accepted);
      if (o.accepted) {
        EXPECT_LE(std::abs(wrap_angle(o.theta_applied - o.theta_fb)), kFeedbackWindow);
      }
    }
  }
}

TEST(RunProtocol, FeedbackNullsDemonCoherence) {
  SimParams p;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const ProtocolOutcome o = run_protocol(p, i);
    EXPECT_LE(std::abs(o.demon_final_post_fb.x), 1e-12);
    EXPECT_GE(o.demon_final_post_fb.z, 0.0);
    EXPECT_NEAR(o.demon_final_post_fb.z, o.demon_final_pre_fb.length(), 1e-12);
  }
}

TEST(RunProtocol, SameRotationOnEveryTrack) {
  SimParams p = short_run();
  for (std::uint64_t i = 0; i < 50; ++i) {
    const ProtocolOutcome o = run_protocol(p, i);
    const BlochState omni = rotate_y(o.segment.omni_final, o.theta_applied);
    const BlochState truth = rotate_y(o.segment.true_final, o.theta_applied);
    EXPECT_EQ(o.omni_final_post_fb, omni);
    EXPECT_EQ(o.true_final_post_fb, truth);
  }
}

TEST(RunProtocol, RandomizedAgreesWithIdealWhenAccepted) {
  SimParams ideal = short_run();
  SimParams random = ideal;
  random.feedback_mode = FeedbackMode::randomized;
  const double bound = 1.0 - std::cos(kFeedbackWindow);
  EXPECT_NEAR(bound, 0.0123, 1e-4);
  std::size_t accepted = 0;
  double total = 0.0;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const ProtocolOutcome a = run_protocol(ideal, i);
    const ProtocolOutcome b = run_protocol(random, i);
    EXPECT_EQ(a.demon_final_pre_fb, b.demon_final_pre_fb);
    if (!b.accepted) continue;
    ++accepted;
    const double dz = std::abs(a.demon_final_post_fb.z - b.demon_final_post_fb.z);
    EXPECT_LE(dz, bound + 1e-12);
    total += dz;
  }
  ASSERT_GT(accepted, 0u);
  EXPECT_LE(total / accepted, bound);
}

TEST(RunProtocol, GibbsInitialOutcomes) {
  SimParams p = short_run();
  p.tau = 0.01;
  p.n_traj = 10000;
  const auto batch = run_batch(p, 0);
  std::size_t ground = 0;
  for (const auto& o : batch) ground += o.j_init == EnergyOutcome::ground;
  const double want = 1.0 / (1.0 + std::exp(-p.beta));
  EXPECT_NEAR(static_cast<double>(ground) / batch.size(), want,
              3.0 * bernoulli_se(want, batch.size()));
}

TEST(RunProtocol, FilterMatchesProjectiveFrequencies) {
  // The demon's ground probability, averaged over trajectories, equals the
  // frequency of ground outcomes from measuring the true state.
  SimParams p;
  p.path_stride = 200;
  p.feedback_enabled = false;
  p.n_traj = 4000;
  const auto batch = run_batch(p, 0);
  const std::size_t points = batch.front().segment.demon_path.size();
  ASSERT_EQ(points, 10u);
  for (std::size_t m = 0; m < points; ++m) {
    Rng rng(p.seed, m, StreamPurpose::projection);
    std::vector<double> diff;
    diff.reserve(batch.size());
    for (const auto& o : batch) {
      const double p0 = 0.5 * (1.0 + o.segment.demon_path[m].z);
      const bool ground = project_energy(o.segment.true_path[m], rng) == EnergyOutcome::ground;
      diff.push_back(p0 - (ground ? 1.0 : 0.0));
    }
    const auto mom = oracle::moments(diff);
    EXPECT_LE(std::abs(mom.mean), 3.0 * mom.se) << "checkpoint " << m;
  }
}

TEST(RunProtocol, WorkIsBoundedByInformation) {
  // <e^{-beta W - I}> = 1 implies beta <W> >= -<I>. At the default
  // efficiency the information is negative on average, so work goes in.
  SimParams p;
  p.n_traj = 2000;
  const auto batch = run_batch(p, 0);
  std::vector<double> w, bound;
  for (const auto& o : batch) {
    w.push_back(o.work);
    bound.push_back(p.beta * o.work + o.info_fin);
  }
  const auto b = oracle::moments(bound);
  EXPECT_GE(b.mean, -3.0 * b.se);
  EXPECT_GT(oracle::moments(w).mean, 0.0);
}

TEST(RunProtocol, EfficientDemonExtractsWork) {
  SimParams p;
  p.eta = 1.0;
  p.n_traj = 2000;
  const auto batch = run_batch(p, 0);
  std::vector<double> w, info;
  for (const auto& o : batch) {
    w.push_back(o.work);
    info.push_back(o.info_fin);
  }
  const auto mw = oracle::moments(w);
  EXPECT_LT(mw.mean + 3.0 * mw.se, 0.0);
  EXPECT_GT(oracle::moments(info).mean, 0.0);
}

TEST(RunProtocol, Deterministic) {
  SimParams p = short_run();
  const ProtocolOutcome a = run_protocol(p, 77);
  const ProtocolOutcome b = run_protocol(p, 77);
  EXPECT_EQ(a.demon_final_post_fb, b.demon_final_post_fb);
  EXPECT_EQ(a.i_final, b.i_final);
  EXPECT_EQ(a.info_fin, b.info_fin);
}

}  // namespace
}  // namespace qdemon
