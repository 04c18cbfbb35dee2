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

#include "qdemon/sme.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qdemon/error.hpp"

namespace qdemon {
namespace {

void check_finite(const BlochState& s) {
  if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.z)) {
    throw Error(ErrorCode::integration_diverged,
                "state update produced a non-finite Bloch vector; reduce dt");
  }
}

StepResult finish_euler(BlochState s) {
  check_finite(s);
  const bool clamped = clamp_to_sphere(s);
  return {s, clamped};
}

}  // namespace

BlochState lindblad_step(const BlochState& s, const SimParams& p, double dt) {
  return {s.x + (p.omega_r * s.z - 2.0 * p.k * s.x) * dt,
          s.y - 2.0 * p.k * s.y * dt,
          s.z - p.omega_r * s.x * dt};
}

StepResult filter_step(const BlochState& s, double dv, double k_obs, const SimParams& p,
                       double dt) {
  const ChannelInnovation channel{k_obs, dv};
  return filter_step(s, std::span<const ChannelInnovation>(&channel, 1), p, dt);
}

StepResult filter_step(const BlochState& s, std::span<const ChannelInnovation> channels,
                       const SimParams& p, double dt) {
  BlochState next = lindblad_step(s, p, dt);
  for (const auto& c : channels) {
    if (c.strength < 0.0 || !std::isfinite(c.dv)) {
      throw Error(ErrorCode::invalid_parameter,
                  "filter_step: channel strength must be >= 0 and dV finite");
    }
    const double g = 2.0 * std::sqrt(c.strength) * c.dv;
    next.x += -g * s.x * s.z;
    next.y += -g * s.y * s.z;
    next.z += g * (1.0 - s.z * s.z);
  }
  return finish_euler(next);
}

double sample_record(double z_true, double dw, double k_obs, double dt) {
  if (!(k_obs > 0.0)) {
    throw Error(ErrorCode::no_signal, "sample_record: k_obs must be > 0");
  }
  return z_true + dw / (std::sqrt(4.0 * k_obs) * dt);
}

double innovation(double r, double z_est, double k_obs, double dt) {
  return std::sqrt(4.0 * k_obs) * (r - z_est) * dt;
}

StepResult kraus_step(const BlochState& s, std::span<const ChannelRecord> observed,
                      double k_unobserved, const SimParams& p, double dt) {
  double sum = 0.0;
  double observed_strength = 0.0;
  for (const auto& c : observed) {
    const double dy = 2.0 * std::sqrt(c.strength) * c.r * dt;
    sum += std::sqrt(c.strength) * dy;
    observed_strength += c.strength;
  }
  // Dephasing always uses the total p.k, so every track shares it exactly.
  const double a = 1.0 - 0.5 * p.k * dt + 0.5 * (sum * sum - observed_strength * dt);
  const double b = sum;
  // tan makes the undamped step an exact rotation by omega_r * dt.
  const double c = std::tan(0.5 * p.omega_r * dt);

  // M is real: [[a+b, -c], [c, a-b]]. The real part of rho transforms as
  // M R M^T; the imaginary part (y/2) J picks up det(M).
  const double m00 = a + b, m01 = -c, m10 = c, m11 = a - b;
  const double r00 = 0.5 * (1.0 + s.z), r01 = 0.5 * s.x, r11 = 0.5 * (1.0 - s.z);

  const double t00 = m00 * r00 + m01 * r01;
  const double t01 = m00 * r01 + m01 * r11;
  const double t10 = m10 * r00 + m11 * r01;
  const double t11 = m10 * r01 + m11 * r11;

  const double u = k_unobserved * dt;
  const double n00 = t00 * m00 + t01 * m01 + u * r00;
  const double n01 = t00 * m10 + t01 * m11 - u * r01;
  const double n11 = t10 * m10 + t11 * m11 + u * r11;
  const double ny = (m00 * m11 - m01 * m10) * s.y - u * s.y;

  const double trace = n00 + n11;
  BlochState next{2.0 * n01 / trace, ny / trace, (n00 - n11) / trace};
  check_finite(next);
  // Rounding only; the map itself cannot leave the sphere.
  clamp_to_sphere(next);
  return {next, false};
}

BlochState integrate_lindblad(const BlochState& s, const SimParams& p, double t,
                              std::size_t substeps) {
  auto rhs = [&](const BlochState& v) {
    return BlochState{p.omega_r * v.z - 2.0 * p.k * v.x, -2.0 * p.k * v.y, -p.omega_r * v.x};
  };
  auto axpy = [](const BlochState& a, double h, const BlochState& d) {
    return BlochState{a.x + h * d.x, a.y + h * d.y, a.z + h * d.z};
  };
  const double h = t / static_cast<double>(std::max<std::size_t>(substeps, 1));
  BlochState v = s;
  for (std::size_t i = 0; i < substeps; ++i) {
    const BlochState k1 = rhs(v);
    const BlochState k2 = rhs(axpy(v, h / 2, k1));
    const BlochState k3 = rhs(axpy(v, h / 2, k2));
    const BlochState k4 = rhs(axpy(v, h, k3));
    v.x += h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
    v.y += h / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
    v.z += h / 6 * (k1.z + 2 * k2.z + 2 * k3.z + k4.z);
  }
  return v;
}

BlochState unmonitored_step(const BlochState& s, const SimParams& p, double dt) {
  if (p.integrator == Integrator::euler) return lindblad_step(s, p, dt);
  return kraus_step(s, {}, p.k, p, dt).state;
}

WienerSource::WienerSource(std::uint64_t seed, std::uint64_t trajectory, unsigned substeps)
    : observed_(seed, trajectory, StreamPurpose::observed_noise),
      hidden_(seed, trajectory, StreamPurpose::hidden_noise),
      substeps_(std::max(1u, substeps)) {}

double WienerSource::draw(Rng& rng, double dt) {
  const double scale = std::sqrt(dt / substeps_);
  double dw = 0.0;
  for (unsigned i = 0; i < substeps_; ++i) dw += scale * rng.normal();
  return dw;
}

MonitoredSegment run_monitored_segment(const SimParams& p, const BlochState& start_true,
                                       const BlochState& start_prior, WienerSource& noise) {
  p.validate();
  const std::size_t steps = p.steps();
  const double dt = p.dt;
  const double k1 = p.k_observed();
  const double k2 = p.k_hidden();
  const bool monitored = k1 > 0.0;
  const bool hidden = k2 > 0.0;
  const bool hierarchy = p.mode == SegmentMode::hierarchy;
  const bool euler = p.integrator == Integrator::euler;

  if (hierarchy && std::abs(start_true.length() - 1.0) > 1e-9) {
    throw Error(ErrorCode::state_invalid, "run_monitored_segment: true state must be pure");
  }
  if (start_prior.length() > 1.0 + kLengthSlack) {
    throw Error(ErrorCode::state_invalid, "run_monitored_segment: prior is not a valid state");
  }

  MonitoredSegment seg;
  seg.mode = p.mode;
  seg.steps = steps;
  if (p.keep_records && monitored) {
    seg.records.reserve(steps);
    if (hierarchy && hidden) seg.hidden_records.reserve(steps);
  }
  if (p.path_stride > 0) {
    const std::size_t n = steps / p.path_stride + 1;
    seg.times.reserve(n);
    seg.demon_path.reserve(n);
    if (hierarchy) {
      seg.true_path.reserve(n);
      seg.omni_path.reserve(n);
    }
  }

  BlochState truth = start_true;
  BlochState omni = start_prior;
  BlochState demon = start_prior;
  {
    const double l = demon.length();
    seg.demon_length_min = l;
    seg.demon_length_max = l;
  }

  auto record_point = [&](std::size_t step) {
    seg.times.push_back(static_cast<double>(step) * dt);
    seg.demon_path.push_back(demon);
    if (hierarchy) {
      seg.true_path.push_back(truth);
      seg.omni_path.push_back(omni);
    }
  };
  auto count = [&](const StepResult& r) {
    if (r.clamped) ++seg.clamp_events;
    return r.state;
  };

  std::array<ChannelRecord, 2> records{};
  std::array<ChannelInnovation, 2> innovations{};

  for (std::size_t n = 0; n < steps; ++n) {
    if (!monitored) {
      if (hierarchy) {
        truth = unmonitored_step(truth, p, dt);
        omni = unmonitored_step(omni, p, dt);
      }
      demon = unmonitored_step(demon, p, dt);
    } else if (hierarchy) {
      const double dw1 = noise.observed(dt);
      const double r1 = sample_record(truth.z, dw1, k1, dt);
      double dw2 = 0.0;
      double r2 = 0.0;
      if (hidden) {
        dw2 = noise.hidden(dt);
        r2 = sample_record(truth.z, dw2, k2, dt);
      }
      if (p.keep_records) {
        seg.records.push_back(r1);
        if (hidden) seg.hidden_records.push_back(r2);
      }
      const std::size_t nch = hidden ? 2 : 1;
      if (euler) {
        innovations[0] = {k1, dw1};
        innovations[1] = {k2, dw2};
        const BlochState prev_truth = truth;
        truth = count(filter_step(prev_truth, std::span(innovations.data(), nch), p, dt));
        innovations[0].dv = innovation(r1, omni.z, k1, dt);
        if (hidden) innovations[1].dv = innovation(r2, omni.z, k2, dt);
        omni = count(filter_step(omni, std::span(innovations.data(), nch), p, dt));
        demon = count(filter_step(demon, innovation(r1, demon.z, k1, dt), k1, p, dt));
      } else {
        records[0] = {k1, r1};
        records[1] = {k2, r2};
        const auto both = std::span<const ChannelRecord>(records.data(), nch);
        truth = count(kraus_step(truth, both, 0.0, p, dt));
        omni = count(kraus_step(omni, both, 0.0, p, dt));
        demon = count(kraus_step(demon, both.first(1), k2, p, dt));
      }
    } else {
      // A consistent filter sees its innovation as a plain Wiener increment.
      const double dv = noise.observed(dt);
      const ChannelRecord rec{k1, sample_record(demon.z, dv, k1, dt)};
      if (p.keep_records) seg.records.push_back(rec.r);
      if (euler) {
        demon = count(filter_step(demon, dv, k1, p, dt));
      } else {
        demon = count(kraus_step(demon, std::span(&rec, 1), k2, p, dt));
      }
    }

    const double l = demon.length();
    seg.demon_length_min = std::min(seg.demon_length_min, l);
    seg.demon_length_max = std::max(seg.demon_length_max, l);

    if (p.path_stride > 0 && (n + 1) % p.path_stride == 0) record_point(n + 1);
  }
  if (seg.times.empty() || seg.times.back() != static_cast<double>(steps) * dt) {
    record_point(steps);
  }

  seg.true_final = hierarchy ? truth : demon;
  seg.omni_final = omni;
  seg.demon_final = demon;
  return seg;
}

}  // namespace qdemon
