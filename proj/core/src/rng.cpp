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

namespace qdemon {
namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index,
                                 StreamPurpose purpose) noexcept {
  const std::uint64_t h0 = splitmix64_mix(master + 0x9E3779B97F4A7C15ULL);
  const std::uint64_t h1 = splitmix64_mix(h0 ^ (index * 0xD1B54A32D192ED03ULL + 1));
  const auto p = static_cast<std::uint64_t>(purpose);
  return splitmix64_mix(h1 ^ (p * 0xAEF17502108EF2D9ULL + 1));
}

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) noexcept {
  for (auto& word : s_) {
    seed += 0x9E3779B97F4A7C15ULL;
    word = splitmix64_mix(seed);
  }
}

Xoshiro256pp::result_type Xoshiro256pp::operator()() noexcept {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() noexcept {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() noexcept {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phase = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phase);
  return r * std::cos(phase);
}

std::uint64_t Rng::below(std::uint64_t n) noexcept {
  // Lemire's multiply-shift with rejection.
  std::uint64_t x = engine_();
  __uint128_t m = static_cast<__uint128_t>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      x = engine_();
      m = static_cast<__uint128_t>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace qdemon
