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

#include "qdemon/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "qdemon/batch.hpp"
#include "qdemon/error.hpp"
#include "qdemon/info.hpp"

namespace qdemon {
namespace {

// Bootstrap stream tags, one per estimator.
constexpr std::uint64_t kTagTpm = 0;
constexpr std::uint64_t kTagWeighted = 1;
constexpr std::uint64_t kTagNoInfo = 2;
constexpr std::uint64_t kTagControl = 3;

bool usable(const ProtocolOutcome& o) {
  if (!o.accepted) return false;
  if (!o.tpm_recorded) {
    throw Error(ErrorCode::mode_mismatch,
                "fluctuation-theorem estimators need the first projection recorded");
  }
  return true;
}

double gibbs_weight(double beta, EnergyOutcome e) {
  const double p0 = 1.0 / (1.0 + std::exp(-beta));
  return e == EnergyOutcome::ground ? p0 : 1.0 - p0;
}

}  // namespace

double bootstrap_se(std::span<const double> values, std::size_t b, Rng& rng) {
  const std::size_t n = values.size();
  if (n < 2 || b < 100) {
    throw Error(ErrorCode::invalid_parameter, "bootstrap_se: need n >= 2 and B >= 100");
  }
  std::vector<double> means(b);
  for (auto& m : means) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += values[rng.below(n)];
    m = sum / static_cast<double>(n);
  }
  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= static_cast<double>(b);
  double ss = 0.0;
  for (double m : means) ss += (m - mean) * (m - mean);
  return std::sqrt(ss / static_cast<double>(b - 1));
}

Estimate bootstrap_mean(std::span<const double> values, const EstimatorOptions& opts,
                        std::uint64_t tag) {
  Estimate e;
  e.n = values.size();
  if (e.n == 0) {
    e.mean = std::nan("");
    e.se = std::nan("");
    return e;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / static_cast<double>(e.n);
  if (e.n < 2) {
    e.se = std::nan("");
    return e;
  }
  Rng rng(opts.seed, tag, StreamPurpose::bootstrap);
  e.se = bootstrap_se(values, opts.bootstrap_b, rng);
  return e;
}

Estimate ft_tpm(std::span<const ProtocolOutcome> batch, double beta,
                const EstimatorOptions& opts) {
  std::vector<double> v;
  v.reserve(batch.size());
  for (const auto& o : batch) {
    if (!usable(o) || o.info_flagged) continue;
    v.push_back(std::exp(-beta * o.work - o.info_fin));
  }
  return bootstrap_mean(v, opts, kTagTpm);
}

Estimate ft_weighted(std::span<const ProtocolOutcome> batch, double beta,
                     const EstimatorOptions& opts) {
  const BlochState rho0 = thermal_state(beta);
  std::vector<double> v;
  v.reserve(batch.size());
  for (const auto& o : batch) {
    if (!usable(o) || o.info_flagged) continue;
    double value = 0.0;
    for (const EnergyOutcome i : {EnergyOutcome::ground, EnergyOutcome::excited}) {
      const double pi = energy_prob(o.info_state, i);
      const ClampedInfo info = info_outcome_clamped(o.j_init, o.info_state, i, rho0);
      const double w = energy(i) - energy(o.j_init);
      value += pi * std::exp(-beta * w - info.value);
    }
    v.push_back(value);
  }
  return bootstrap_mean(v, opts, kTagWeighted);
}

Estimate ft_no_info(std::span<const ProtocolOutcome> batch, double beta,
                    const EstimatorOptions& opts) {
  std::vector<double> v;
  v.reserve(batch.size());
  for (const auto& o : batch) {
    if (!usable(o)) continue;
    v.push_back(std::exp(-beta * o.work));
  }
  return bootstrap_mean(v, opts, kTagNoInfo);
}

TransitionTable ft_binned(std::span<const ProtocolOutcome> batch, double beta) {
  TransitionTable t;
  std::array<std::array<double, 2>, 2> sum_exp{};
  for (const auto& o : batch) {
    if (!usable(o) || o.info_flagged) continue;
    const int j = label(o.j_init);
    const int i = label(o.i_final);
    ++t.counts[j][i];
    sum_exp[j][i] += std::exp(-o.info_fin);
  }
  t.ft = 0.0;
  for (int j = 0; j < 2; ++j) {
    const std::size_t row = t.counts[j][0] + t.counts[j][1];
    for (int i = 0; i < 2; ++i) {
      const std::size_t c = t.counts[j][i];
      t.probability[j][i] = row > 0 ? static_cast<double>(c) / static_cast<double>(row) : 0.0;
      t.mean_exp_neg_info[j][i] = c > 0 ? sum_exp[j][i] / static_cast<double>(c) : 0.0;
      const double w = static_cast<double>(i - j);
      t.ft += gibbs_weight(beta, static_cast<EnergyOutcome>(j)) * t.probability[j][i] *
              std::exp(-beta * w) * t.mean_exp_neg_info[j][i];
    }
  }
  return t;
}

WorkHistogram work_histogram(std::span<const ProtocolOutcome> batch) {
  WorkHistogram h;
  for (const auto& o : batch) {
    if (!o.accepted || !o.tpm_recorded) continue;
    if (o.work < -0.5) {
      ++h.minus_one;
    } else if (o.work > 0.5) {
      ++h.plus_one;
    } else {
      ++h.zero;
    }
  }
  return h;
}

std::size_t count_accepted(std::span<const ProtocolOutcome> batch) {
  return static_cast<std::size_t>(
      std::count_if(batch.begin(), batch.end(), [](const auto& o) { return o.accepted; }));
}

std::size_t count_flagged(std::span<const ProtocolOutcome> batch) {
  return static_cast<std::size_t>(std::count_if(
      batch.begin(), batch.end(), [](const auto& o) { return o.accepted && o.info_flagged; }));
}

Estimate ft_no_feedback_control(SimParams p, unsigned workers, const EstimatorOptions& opts) {
  p.feedback_enabled = false;
  p.initial_projection = true;
  p.mode = SegmentMode::hierarchy;
  const auto batch = run_batch(p, workers);
  std::vector<double> v;
  v.reserve(batch.size());
  for (const auto& o : batch) v.push_back(std::exp(-p.beta * o.work));
  return bootstrap_mean(v, opts, kTagControl);
}

std::string_view to_string(SweepAxis a) noexcept {
  return a == SweepAxis::tau ? "tau" : "beta";
}

std::vector<double> default_tau_grid() { return {0.4, 0.8, 1.2, 1.6, 2.0}; }

std::vector<double> default_beta_grid() {
  constexpr int n = 12;
  const double lo = std::log(2.0 * std::atanh(0.05));
  const double hi = std::log(4.0);
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) {
    grid[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / (n - 1));
  }
  grid.back() = 4.0;
  return grid;
}

SweepSummary sweep(const SimParams& p, SweepAxis axis, std::span<const double> values,
                   unsigned workers, const EstimatorOptions& opts) {
  if (values.empty() || !std::is_sorted(values.begin(), values.end())) {
    throw Error(ErrorCode::invalid_parameter, "sweep: values must be nonempty and sorted");
  }
  SweepSummary summary;
  summary.axis = axis;
  for (const double value : values) {
    SweepPoint pt;
    pt.value = value;
    SimParams q = p;
    (axis == SweepAxis::tau ? q.tau : q.beta) = value;
    // One batch serves every column: the eigenstate sampling is identical
    // with the first projection on or off.
    q.initial_projection = true;
    pt.z0 = std::tanh(q.beta / 2.0);
    try {
      const auto batch = run_batch(q, workers);
      pt.ft_tpm = ft_tpm(batch, q.beta, opts);
      pt.ft_weighted = ft_weighted(batch, q.beta, opts);
      pt.ft_no_info = ft_no_info(batch, q.beta, opts);
      pt.n_accepted = count_accepted(batch);
      pt.n_flagged = count_flagged(batch);

      std::vector<InfoSeries> series;
      series.reserve(pt.n_accepted);
      for (const auto& o : batch) {
        if (o.accepted) series.push_back(o.info_path);
      }
      const BlochState rho0 = thermal_state(q.beta);
      const InfoSummary info = q.mode == SegmentMode::hierarchy ? gain_loss(series, rho0)
                                                                : mean_info(series);
      pt.mean_i = info.mean_i;
      pt.mean_i_se = info.se_i;
      pt.i_gain = q.mode == SegmentMode::hierarchy ? info.i_gain : std::nan("");
      pt.i_loss = q.mode == SegmentMode::hierarchy ? info.i_loss : std::nan("");
    } catch (const std::exception& e) {
      pt.error = e.what();
    }
    summary.points.push_back(std::move(pt));
  }
  return summary;
}

}  // namespace qdemon
