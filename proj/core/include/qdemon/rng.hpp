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
#include <limits>
#include <optional>

namespace qdemon {

/// Counter-free stream derivation.
///
/// Every random quantity in a run is drawn from a stream identified by
/// (master seed, trajectory index, purpose). The 64-bit stream seed is
///
///   h0 = mix(seed + 0x9E3779B97F4A7C15)
///   h1 = mix(h0 ^ (index * 0xD1B54A32D192ED03 + 1))
///   h2 = mix(h1 ^ (purpose * 0xAEF17502108EF2D9 + 1))
///
/// with `mix` the SplitMix64 finalizer. The engine is xoshiro256++ whose four
/// state words are filled from a SplitMix64 sequence seeded with h2. Normal
/// variates use the Box-Muller transform on (1 - u1, u2), consuming two
/// uniforms per pair and returning the cosine branch first.
enum class StreamPurpose : std::uint64_t {
  preparation = 1,
  observed_noise = 2,
  hidden_noise = 3,
  feedback = 4,
  projection = 5,
  bootstrap = 6,
};

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index,
                                 StreamPurpose purpose) noexcept;

class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256pp(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() noexcept;

 private:
  std::uint64_t s_[4];
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : engine_(seed) {}
  Rng(std::uint64_t master, std::uint64_t index, StreamPurpose purpose) noexcept
      : engine_(derive_stream_seed(master, index, purpose)) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Standard normal.
  double normal() noexcept;
  /// Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n) noexcept;

 private:
  Xoshiro256pp engine_;
  std::optional<double> spare_;
};

}  // namespace qdemon
