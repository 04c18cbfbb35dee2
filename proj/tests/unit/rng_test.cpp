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

#include "qdemon/rng.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace qdemon {
namespace {

TEST(Rng, SameStreamSameSequence) {
  Rng a(99, 7, StreamPurpose::observed_noise);
  Rng b(99, 7, StreamPurpose::observed_noise);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.normal(), b.normal());
}

TEST(Rng, StreamsAreDistinct) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t index = 0; index < 1000; ++index) {
    for (auto purpose : {StreamPurpose::preparation, StreamPurpose::observed_noise,
                         StreamPurpose::hidden_noise, StreamPurpose::feedback,
                         StreamPurpose::projection, StreamPurpose::bootstrap}) {
      seeds.insert(derive_stream_seed(42, index, purpose));
    }
  }
  EXPECT_EQ(seeds.size(), 6000u);
  EXPECT_NE(derive_stream_seed(1, 0, StreamPurpose::preparation),
            derive_stream_seed(2, 0, StreamPurpose::preparation));
}

TEST(Rng, BoxMullerFollowsDocumentedProcedure) {
  Rng uniforms(5);
  Rng normals(5);
  for (int i = 0; i < 100; ++i) {
    const double u1 = 1.0 - uniforms.uniform();
    const double u2 = uniforms.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    EXPECT_EQ(normals.normal(), r * std::cos(2.0 * std::numbers::pi * u2));
    EXPECT_EQ(normals.normal(), r * std::sin(2.0 * std::numbers::pi * u2));
  }
}

TEST(Rng, UniformRangeAndMoments) {
  Rng rng(11);
  std::vector<double> v(200000);
  for (auto& x : v) {
    x = rng.uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
  }
  const auto m = oracle::moments(v);
  EXPECT_NEAR(m.mean, 0.5, 3.0 * std::sqrt(1.0 / 12.0 / v.size()) * 1.5);
}

TEST(Rng, NormalMoments) {
  Rng rng(13);
  const std::size_t n = 400000;
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal();
  const auto m = oracle::moments(v);
  EXPECT_NEAR(m.mean, 0.0, 4.0 / std::sqrt(n));
  double var = 0.0;
  for (double x : v) var += (x - m.mean) * (x - m.mean);
  var /= static_cast<double>(n - 1);
  EXPECT_NEAR(var, 1.0, 4.0 * std::sqrt(2.0 / n));
}

TEST(Rng, BelowIsInRangeAndRoughlyUniform) {
  Rng rng(17);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto k = rng.below(7);
    ASSERT_LT(k, 7u);
    ++counts[k];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
}

}  // namespace
}  // namespace qdemon
