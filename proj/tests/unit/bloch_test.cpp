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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "qdemon/error.hpp"
#include "qdemon/rng.hpp"

namespace qdemon {
namespace {

constexpr double kLn2 = std::numbers::ln2;

BlochState random_state(Rng& rng) {
  // Uniform direction, length uniform in [0, 1].
  const double u = 2.0 * rng.uniform() - 1.0;
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  const double l = rng.uniform();
  const double r = std::sqrt(1.0 - u * u);
  return {l * r * std::cos(phi), l * r * std::sin(phi), l * u};
}

TEST(ThermalState, Examples) {
  EXPECT_EQ(thermal_state(0.0), (BlochState{0, 0, 0}));
  EXPECT_NEAR(thermal_state(4.0).z, 0.964028, 5e-7);
  const BlochState cold = thermal_state(50.0);
  EXPECT_LT(1.0 - cold.z, 1e-21);
  EXPECT_EQ(cold.x, 0.0);
}

TEST(ThermalState, RejectsBadBeta) {
  EXPECT_THROW(thermal_state(std::nan("")), Error);
  EXPECT_THROW(thermal_state(INFINITY), Error);
  try {
    thermal_state(-1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_parameter);
  }
}

TEST(ThermalState, MatchesGibbsPopulations) {
  for (double beta : {0.0, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 20.0}) {
    const auto [p0, p1] = energy_probs(thermal_state(beta));
    EXPECT_NEAR(p0, 1.0 / (1.0 + std::exp(-beta)), 1e-12) << beta;
    EXPECT_NEAR(p1, std::exp(-beta) / (1.0 + std::exp(-beta)), 1e-12) << beta;
  }
}

TEST(EigenProbs, Examples) {
  auto p = eigen_probs({0, 0, 0});
  EXPECT_EQ(p.first, 0.5);
  EXPECT_EQ(p.second, 0.5);
  p = eigen_probs({0.6, 0, 0.8});
  EXPECT_NEAR(p.first, 1.0, 1e-15);
  EXPECT_NEAR(p.second, 0.0, 1e-15);
  p = eigen_probs({0.3, 0, 0.4});
  EXPECT_NEAR(p.first, 0.75, 1e-15);
  EXPECT_NEAR(p.second, 0.25, 1e-15);
}

TEST(EigenProbs, RejectsUnphysicalState) {
  try {
    eigen_probs({1.0, 0.0, 0.1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::state_invalid);
  }
  EXPECT_NO_THROW(eigen_probs({0.0, 0.0, 1.0 + 0.5e-9}));
}

TEST(EnergyProbs, Examples) {
  auto p = energy_probs({0, 0, 1});
  EXPECT_EQ(p.first, 1.0);
  EXPECT_EQ(p.second, 0.0);
  p = energy_probs({0, 0, 0.5});
  EXPECT_EQ(p.first, 0.75);
  EXPECT_EQ(p.second, 0.25);
  p = energy_probs({0, 0, -1});
  EXPECT_EQ(p.first, 0.0);
  EXPECT_EQ(p.second, 1.0);
}

TEST(Entropy, Examples) {
  EXPECT_EQ(von_neumann_entropy({1, 0, 0}), 0.0);
  EXPECT_NEAR(von_neumann_entropy({0, 0, 0}), 0.693147, 5e-7);
  EXPECT_NEAR(von_neumann_entropy(thermal_state(4.0)), 0.090095, 5e-7);
}

TEST(RotateY, Examples) {
  const BlochState a = rotate_y({0, 0, 1}, 0.0);
  EXPECT_EQ(a, (BlochState{0, 0, 1}));
  const BlochState b = rotate_y({0, 0, -1}, std::numbers::pi);
  EXPECT_NEAR(b.x, 0.0, 1e-15);
  EXPECT_NEAR(b.z, 1.0, 1e-15);
  const BlochState c = rotate_y({1, 0, 0}, std::numbers::pi / 2);
  EXPECT_NEAR(c.x, 0.0, 1e-15);
  EXPECT_NEAR(c.z, 1.0, 1e-15);
}

TEST(Purity, Examples) {
  EXPECT_EQ(purity({0, 0, 0}), 0.5);
  EXPECT_EQ(purity({0, 0, 1}), 1.0);
  EXPECT_NEAR(purity({0.3, 0, 0.4}), 0.625, 1e-15);
}

TEST(BlochProperties, RandomStates) {
  Rng rng(12345);
  for (int trial = 0; trial < 2000; ++trial) {
    const BlochState s = random_state(rng);
    const double theta = 2.0 * std::numbers::pi * rng.uniform();

    EXPECT_NEAR(rotate_y(s, theta).length(), s.length(), 1e-12);
    EXPECT_EQ(rotate_y(s, theta).y, s.y);

    const auto e = eigen_probs(s);
    const auto en = energy_probs(s);
    EXPECT_NEAR(e.first + e.second, 1.0, 1e-15);
    EXPECT_NEAR(en.first + en.second, 1.0, 1e-15);

    const double S = von_neumann_entropy(s);
    EXPECT_GE(S, 0.0);
    EXPECT_LE(S, kLn2 + 1e-15);
    EXPECT_NEAR(S, oracle::entropy_from_matrix(s), 1e-7);

    // atan2 nulling: the feedback convention maps the X-Z projection to +z.
    const BlochState xz{s.x, 0.0, s.z};
    const BlochState r = rotate_y(xz, std::atan2(xz.x, xz.z));
    EXPECT_NEAR(r.x, 0.0, 1e-12);
    EXPECT_GE(r.z, 0.0);
  }
}

TEST(BlochProperties, EntropyZeroExactlyForPureStates) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    BlochState s = random_state(rng);
    const double l = s.length();
    s = {s.x / l, s.y / l, s.z / l};
    EXPECT_NEAR(von_neumann_entropy(s), 0.0, 1e-12);
  }
  // A state measurably inside the ball has strictly positive entropy.
  EXPECT_GT(von_neumann_entropy({0.0, 0.0, 1.0 - 1e-6}), 1e-12);
}

TEST(ClampToSphere, RescalesOnlyOutside) {
  BlochState inside{0.3, 0.0, 0.4};
  EXPECT_FALSE(clamp_to_sphere(inside));
  EXPECT_EQ(inside, (BlochState{0.3, 0.0, 0.4}));
  BlochState outside{0.0, 0.0, 1.2};
  EXPECT_TRUE(clamp_to_sphere(outside));
  EXPECT_EQ(outside.z, 1.0);
}

}  // namespace
}  // namespace qdemon
