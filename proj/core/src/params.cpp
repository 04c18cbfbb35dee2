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

#include "qdemon/params.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qdemon/error.hpp"

namespace qdemon {
namespace {

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) {
    throw Error(ErrorCode::invalid_parameter, std::string(field) + ": " + what, field);
  }
}

}  // namespace

std::string_view to_string(SegmentMode m) noexcept {
  return m == SegmentMode::hierarchy ? "hierarchy" : "filter-only";
}
std::string_view to_string(FeedbackMode m) noexcept {
  return m == FeedbackMode::ideal ? "ideal" : "randomized";
}
std::string_view to_string(Integrator m) noexcept {
  return m == Integrator::kraus ? "kraus" : "euler";
}
std::string_view to_string(InfoEvaluation m) noexcept {
  return m == InfoEvaluation::post_feedback ? "post-feedback" : "pre-feedback";
}

std::size_t SimParams::steps() const {
  require(std::isfinite(tau) && tau >= 0.0, "tau", "must be finite and >= 0");
  require(std::isfinite(dt) && dt > 0.0, "dt", "must be finite and > 0");
  const double ratio = tau / dt;
  const double nearest = std::round(ratio);
  // The ratio of two decimal literals is rarely exact; allow a few ulps.
  const double tol = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, nearest);
  require(std::abs(ratio - nearest) <= tol, "tau",
          "tau/dt = " + std::to_string(ratio) + " is not an integer step count");
  return static_cast<std::size_t>(nearest);
}

void SimParams::validate() const {
  require(std::isfinite(omega_r) && omega_r >= 0.0, "omega_r", "must be finite and >= 0");
  require(std::isfinite(k) && k >= 0.0, "k", "must be finite and >= 0");
  require(std::isfinite(eta) && eta > 0.0 && eta <= 1.0, "eta", "must lie in (0, 1]");
  require(std::isfinite(beta) && beta >= 0.0, "beta", "must be finite and >= 0");
  require(noise_substeps >= 1, "noise_substeps", "must be >= 1");
  (void)steps();
}

}  // namespace qdemon
