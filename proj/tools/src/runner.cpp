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

#include "qdemon/cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>

#include <fmt/format.h>
#include "json.hpp"

#include "qdemon/batch.hpp"
#include "qdemon/error.hpp"
#include "qdemon/info.hpp"
#include "qdemon/version.hpp"

namespace qdemon::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kBoundSlack = 1e-9;

ordered_json point_json(const BlochState& s) { return {{"x", s.x}, {"y", s.y}, {"z", s.z}}; }

ordered_json estimate_json(const Estimate& e) {
  return {{"mean", e.mean}, {"se", e.se}, {"n", e.n}};
}

ordered_json params_json(const RunConfig& cfg) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : echo(cfg)) j[k] = v;
  return j;
}

std::string echo_comments(const RunConfig& cfg) {
  std::string out = fmt::format("# qdemon {}\n", kVersion);
  for (const auto& [k, v] : echo(cfg)) out += fmt::format("# {}={}\n", k, v);
  return out;
}

EstimatorOptions estimator_options(const RunConfig& cfg) {
  return {cfg.bootstrap_b, cfg.seed};
}

std::string num(double v) { return fmt::format("{}", v); }

// Range of I~ over every step, from the extremes of the demon Bloch length
// (entropy decreases monotonically with length).
struct InfoRange {
  double lo = 0.0;
  double hi = 0.0;
};
InfoRange info_range(const ProtocolOutcome& o, double s0) {
  auto entropy_at = [](double l) {
    return von_neumann_entropy(BlochState{0.0, 0.0, std::min(l, 1.0)});
  };
  return {s0 - entropy_at(o.demon_length_min), s0 - entropy_at(o.demon_length_max)};
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};
MeanSe mean_se(const std::vector<double>& v) {
  const auto n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0};
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) throw Error(ErrorCode::config, fmt::format("cannot write '{}'", path.string()),
                        "output_dir");
}

void prepare_output_dir(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec || !fs::is_directory(cfg.output_dir)) {
    throw Error(ErrorCode::config,
                fmt::format("output_dir '{}' is not a writable directory", cfg.output_dir),
                "output_dir");
  }
}

}  // namespace

std::string trajectory_line(const ProtocolOutcome& o, const RunConfig& cfg) {
  ordered_json j;
  j["id"] = o.id;
  j["version"] = kVersion;
  j["config_digest"] = config_digest(cfg);
  if (o.tpm_recorded) {
    j["j_init"] = label(o.j_init);
  } else {
    j["j_init"] = nullptr;
  }
  j["i_final"] = label(o.i_final);
  if (o.tpm_recorded) {
    j["work"] = o.work;
  } else {
    j["work"] = nullptr;
  }
  j["theta_fb"] = o.theta_fb;
  j["theta_applied"] = o.theta_applied;
  j["accepted"] = o.accepted;
  j["info_fin"] = o.info_fin;
  j["info_flagged"] = o.info_flagged;
  j["demon_pre_fb"] = point_json(o.demon_final_pre_fb);
  j["demon_post_fb"] = point_json(o.demon_final_post_fb);
  j["true_post_fb"] = point_json(o.true_final_post_fb);
  if (cfg.emit_paths) {
    const auto& seg = o.segment;
    auto track = [](const std::vector<BlochState>& path) {
      ordered_json a = ordered_json::array();
      for (const auto& s : path) a.push_back({s.x, s.z});
      return a;
    };
    ordered_json paths;
    paths["t"] = seg.times;
    paths["true"] = track(seg.true_path);
    paths["omni"] = track(seg.omni_path);
    paths["demon"] = track(seg.demon_path);
    paths["i_tilde"] = o.info_path.i_tilde;
    j["paths"] = std::move(paths);
  }
  return j.dump();
}

RunArtifacts render_run(const RunConfig& cfg) {
  cfg.validate();
  const SimParams p = cfg.to_params();
  const auto batch = run_batch(p, cfg.workers);
  const EstimatorOptions opts = estimator_options(cfg);
  const BlochState rho0 = thermal_state(p.beta);
  const double s0 = von_neumann_entropy(rho0);
  const InfoBounds bounds = info_bounds(rho0);

  RunArtifacts out;
  for (const auto& o : batch) {
    out.trajectories_jsonl += trajectory_line(o, cfg);
    out.trajectories_jsonl += '\n';
  }

  out.bloch_points_csv = echo_comments(cfg);
  out.bloch_points_csv += "id,accepted,x_pre,z_pre,x_post,z_post,i_final\n";
  for (const auto& o : batch) {
    out.bloch_points_csv += fmt::format(
        "{},{},{},{},{},{},{}\n", o.id, o.accepted ? 1 : 0, num(o.demon_final_pre_fb.x),
        num(o.demon_final_pre_fb.z), num(o.demon_final_post_fb.x),
        num(o.demon_final_post_fb.z), label(o.i_final));
  }

  std::vector<ProtocolOutcome> accepted;
  std::vector<InfoSeries> series;
  std::size_t clamp_events = 0;
  bool bounds_ok = true;
  for (const auto& o : batch) {
    clamp_events += o.clamp_events;
    const InfoRange r = info_range(o, s0);
    bounds_ok = bounds_ok && r.lo >= bounds.lower - kBoundSlack &&
                r.hi <= bounds.upper + kBoundSlack;
    if (o.accepted) {
      accepted.push_back(o);
      series.push_back(o.info_path);
    }
  }

  ordered_json s;
  s["version"] = kVersion;
  s["config_digest"] = config_digest(cfg);
  s["params"] = params_json(cfg);
  s["n_traj"] = batch.size();
  s["n_accepted"] = accepted.size();
  s["n_flagged"] = count_flagged(batch);
  s["clamp_events"] = clamp_events;

  if (p.initial_projection) {
    s["ft_tpm"] = estimate_json(ft_tpm(accepted, p.beta, opts));
    s["ft_weighted"] = estimate_json(ft_weighted(accepted, p.beta, opts));
    s["ft_no_info"] = estimate_json(ft_no_info(accepted, p.beta, opts));
    const TransitionTable t = ft_binned(accepted, p.beta);
    s["ft_binned"] = {{"ft", t.ft},
                      {"counts", t.counts},
                      {"probability", t.probability},
                      {"mean_exp_neg_info", t.mean_exp_neg_info}};
    const WorkHistogram h = work_histogram(accepted);
    s["work_histogram"] = {{"-1", h.minus_one}, {"0", h.zero}, {"+1", h.plus_one}};
  }

  ordered_json info;
  info["s0"] = s0;
  info["bound_lower"] = bounds.lower;
  info["bound_upper"] = bounds.upper;
  info["trajectory_bounds_ok"] = bounds_ok;
  if (series.size() >= 2) {
    const InfoSummary m = p.mode == SegmentMode::hierarchy ? gain_loss(series, rho0)
                                                           : mean_info(series);
    info["mean_i"] = m.mean_i;
    info["mean_i_se"] = m.se_i;
    if (p.mode == SegmentMode::hierarchy) {
      info["i_gain"] = m.i_gain;
      info["i_gain_se"] = m.se_gain;
      info["i_loss"] = m.i_loss;
      info["i_loss_se"] = m.se_loss;
    }
    info["times"] = series.front().times;
    info["mean_curve"] = m.mean_curve;
  }
  s["info"] = std::move(info);

  if (accepted.size() >= 2) {
    std::vector<double> demon_z;
    std::vector<double> freq_z;
    std::vector<double> diff;
    for (const auto& o : accepted) {
      const double zf = o.i_final == EnergyOutcome::ground ? 1.0 : -1.0;
      demon_z.push_back(o.demon_final_post_fb.z);
      freq_z.push_back(zf);
      diff.push_back(o.demon_final_post_fb.z - zf);
    }
    const MeanSe pre = [&] {
      std::vector<double> v;
      for (const auto& o : accepted) v.push_back(o.demon_final_pre_fb.z);
      return mean_se(v);
    }();
    const MeanSe dz = mean_se(demon_z);
    const MeanSe fz = mean_se(freq_z);
    const MeanSe d = mean_se(diff);
    s["feedback_validation"] = {{"mean_demon_z_pre_fb", pre.mean},
                                {"mean_demon_z_post_fb", dz.mean},
                                {"mean_demon_z_post_fb_se", dz.se},
                                {"projective_z", fz.mean},
                                {"projective_z_se", fz.se},
                                {"paired_difference", d.mean},
                                {"paired_difference_se", d.se}};
  }
  out.summary_json = s.dump(2) + "\n";
  return out;
}

std::string render_sweep_csv(const SweepSummary& summary, const RunConfig& cfg) {
  std::string out = echo_comments(cfg);
  out += fmt::format("# axis={}\n", to_string(summary.axis));
  out += kSweepHeader;
  out += '\n';
  for (const auto& pt : summary.points) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", num(pt.value), num(pt.z0),
                       num(pt.ft_tpm.mean), num(pt.ft_tpm.se), num(pt.ft_weighted.mean),
                       num(pt.ft_weighted.se), num(pt.ft_no_info.mean), num(pt.ft_no_info.se),
                       num(pt.mean_i), num(pt.mean_i_se), num(pt.i_gain), num(pt.i_loss),
                       pt.n_accepted, pt.n_flagged);
  }
  return out;
}

int cmd_run(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = cfg.output_dir;
  const fs::path files[] = {dir / "trajectories.jsonl", dir / "summary.json",
                            dir / "bloch_points.csv"};
  try {
    cfg.validate();
    prepare_output_dir(cfg);
    const RunArtifacts a = render_run(cfg);
    write_file(files[0], a.trajectories_jsonl);
    write_file(files[1], a.summary_json);
    write_file(files[2], a.bloch_points_csv);
    log << fmt::format("wrote {} trajectories to {}\n", cfg.n_traj, dir.string());
    return 0;
  } catch (const std::exception& e) {
    std::error_code ec;
    for (const auto& f : files) fs::remove(f, ec);
    log << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_sweep(const RunConfig& cfg, SweepAxis axis, const std::vector<double>& values,
              std::ostream& log) {
  const fs::path file = fs::path(cfg.output_dir) / "sweep.csv";
  try {
    cfg.validate();
    prepare_output_dir(cfg);
    const SimParams p = cfg.to_params();
    const SweepSummary summary = sweep(p, axis, values, cfg.workers, estimator_options(cfg));
    int status = 0;
    for (const auto& pt : summary.points) {
      if (!pt.error.empty()) {
        log << fmt::format("point {}={} failed: {}\n", to_string(axis), pt.value, pt.error);
        status = 1;
      }
    }
    write_file(file, render_sweep_csv(summary, cfg));
    log << fmt::format("wrote {} sweep points to {}\n", summary.points.size(), file.string());
    return status;
  } catch (const std::exception& e) {
    std::error_code ec;
    fs::remove(file, ec);
    log << "error: " << e.what() << '\n';
    return 1;
  }
}

std::vector<CheckResult> run_checks(const RunConfig& cfg) {
  cfg.validate();
  std::vector<CheckResult> results;
  const SimParams base = cfg.to_params();
  const std::uint64_t n_check = std::min<std::uint64_t>(cfg.n_traj, 2000);
  const EstimatorOptions opts = estimator_options(cfg);

  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      results.push_back(body());
    } catch (const std::exception& e) {
      results.push_back({name, false, e.what()});
    }
  };

  // Unit-efficiency monitoring keeps the true track pure.
  guarded("purity_eta1", [&] {
    SimParams p = base;
    p.eta = 1.0;
    p.mode = SegmentMode::hierarchy;
    p.path_stride = 1;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 20; ++i) {
      WienerSource noise(p.seed, i, 1);
      const auto seg = run_monitored_segment(p, BlochState{0, 0, 1}, thermal_state(p.beta), noise);
      for (const auto& s : seg.true_path) worst = std::max(worst, std::abs(s.length() - 1.0));
    }
    return CheckResult{"purity_eta1", worst <= 1e-3,
                       fmt::format("max |l-1| = {:.3e} (limit 1e-3)", worst)};
  });

  // Unconditioned average of the demon filter against the master equation.
  guarded("lindblad_oracle", [&] {
    SimParams p = base;
    p.mode = SegmentMode::filter_only;
    const std::size_t steps = p.steps();
    p.path_stride = std::max<std::size_t>(1, steps / 20);
    const BlochState rho0 = thermal_state(p.beta);
    std::vector<std::vector<double>> z;
    std::vector<double> times;
    for (std::uint64_t i = 0; i < n_check; ++i) {
      WienerSource noise(p.seed, i, 1);
      const auto seg = run_monitored_segment(p, rho0, rho0, noise);
      if (times.empty()) times = seg.times;
      z.resize(seg.demon_path.size());
      for (std::size_t t = 0; t < seg.demon_path.size(); ++t) z[t].push_back(seg.demon_path[t].z);
    }
    double worst = 0.0;
    for (std::size_t t = 0; t < times.size(); ++t) {
      const MeanSe m = mean_se(z[t]);
      const double exact = integrate_lindblad(rho0, p, times[t], 4000).z;
      worst = std::max(worst, std::abs(m.mean - exact) / std::max(m.se, 1e-12));
    }
    return CheckResult{"lindblad_oracle", worst <= 3.0,
                       fmt::format("max deviation {:.2f} SE over {} checkpoints", worst,
                                   times.size())};
  });

  SimParams fb = base;
  fb.n_traj = n_check;
  fb.initial_projection = true;
  fb.mode = SegmentMode::hierarchy;
  std::vector<ProtocolOutcome> batch;
  guarded("info_bounds", [&] {
    batch = run_batch(fb, cfg.workers);
    const BlochState rho0 = thermal_state(fb.beta);
    const InfoBounds b = info_bounds(rho0);
    const double s0 = von_neumann_entropy(rho0);
    std::size_t bad = 0;
    for (const auto& o : batch) {
      const InfoRange r = info_range(o, s0);
      if (r.lo < b.lower - kBoundSlack || r.hi > b.upper + kBoundSlack) ++bad;
    }
    return CheckResult{"info_bounds", bad == 0,
                       fmt::format("{} of {} trajectories outside [S0 - ln2, S0]", bad,
                                   batch.size())};
  });

  guarded("unital_control", [&] {
    const Estimate e = ft_no_feedback_control(fb, cfg.workers, opts);
    const double dev = std::abs(e.mean - 1.0);
    return CheckResult{"unital_control", dev <= 3.0 * e.se,
                       fmt::format("<e^-bW> = {:.4f} +- {:.4f}", e.mean, e.se)};
  });

  guarded("ft_feedback", [&] {
    if (batch.empty()) throw Error(ErrorCode::mode_mismatch, "no batch");
    const Estimate e = ft_tpm(batch, fb.beta, opts);
    return CheckResult{"ft_feedback", std::abs(e.mean - 1.0) <= 3.0 * e.se,
                       fmt::format("<e^-bW-I> = {:.4f} +- {:.4f} (n={})", e.mean, e.se, e.n)};
  });

  guarded("feedback_validation", [&] {
    std::vector<double> diff;
    for (const auto& o : batch) {
      if (!o.accepted) continue;
      diff.push_back(o.demon_final_post_fb.z - (o.i_final == EnergyOutcome::ground ? 1.0 : -1.0));
    }
    if (diff.size() < 2) throw Error(ErrorCode::mode_mismatch, "too few accepted trajectories");
    const MeanSe d = mean_se(diff);
    return CheckResult{"feedback_validation", std::abs(d.mean) <= 3.0 * d.se,
                       fmt::format("<z_demon> - <z_projective> = {:.4f} +- {:.4f}", d.mean, d.se)};
  });

  // Same Brownian paths at dt and dt/2; every average must move by < 1%.
  guarded("step_halving", [&] {
    SimParams coarse = fb;
    coarse.noise_substeps = 2;
    SimParams fine = fb;
    fine.dt = fb.dt / 2.0;
    fine.noise_substeps = 1;
    struct Observables {
      double mean_z = 0.0;
      double mean_i = 0.0;
      double ft = 0.0;
    };
    auto observe = [&](const SimParams& p) {
      const auto b = run_batch(p, cfg.workers);
      Observables o;
      std::vector<InfoSeries> s;
      for (const auto& t : b) {
        o.mean_z += t.demon_final_pre_fb.z;
        s.push_back(t.info_path);
      }
      o.mean_z /= static_cast<double>(b.size());
      o.mean_i = mean_info(s).mean_i;
      o.ft = ft_tpm(b, p.beta, opts).mean;
      return o;
    };
    const Observables a = observe(coarse);
    const Observables f = observe(fine);
    auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(x), 1e-3); };
    const double worst = std::max({rel(a.mean_z, f.mean_z), rel(a.mean_i, f.mean_i),
                                   rel(a.ft, f.ft)});
    return CheckResult{"step_halving", worst < 0.01,
                       fmt::format("max relative change {:.3e} (mean z {:.3e}, <I> {:.3e}, "
                                   "ft {:.3e})",
                                   worst, rel(a.mean_z, f.mean_z), rel(a.mean_i, f.mean_i),
                                   rel(a.ft, f.ft))};
  });

  return results;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  std::vector<CheckResult> results;
  try {
    results = run_checks(cfg);
  } catch (const std::exception& e) {
    out << "error: " << e.what() << '\n';
    return 1;
  }
  bool all = true;
  for (const auto& r : results) {
    out << fmt::format("{:<5} {:<20} {}\n", r.pass ? "PASS" : "FAIL", r.name, r.detail);
    all = all && r.pass;
  }
  if (!all) {
    for (const auto& r : results) {
      if (!r.pass) out << "failed: " << r.name << '\n';
    }
  }
  return all ? 0 : 1;
}

}  // namespace qdemon::cli
