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

#include "qdemon/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "qdemon/error.hpp"

namespace qdemon::cli {
namespace {

[[noreturn]] void fail(std::string_view key, const std::string& what) {
  throw Error(ErrorCode::config, fmt::format("config key '{}': {}", key, what),
              std::string(key));
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view unquote(std::string_view s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    fail(key, fmt::format("expected a finite number, got '{}'", v));
  }
  return out;
}

template <typename Int>
Int to_integer(std::string_view key, std::string_view v) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    fail(key, fmt::format("expected a non-negative integer, got '{}'", v));
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  fail(key, fmt::format("expected a boolean, got '{}'", v));
}

std::string fmt_double(double v) { return fmt::format("{}", v); }
std::string fmt_bool(bool v) { return v ? "true" : "false"; }

}  // namespace

SimParams RunConfig::to_params() const {
  SimParams p;
  p.omega_r = angular_from_mhz(omega_r_mhz);
  p.k = angular_from_mhz(k_khz * 1e-3);
  p.eta = eta;
  p.beta = beta;
  p.tau = tau_us;
  p.dt = dt_ns * 1e-3;
  p.mode = mode;
  p.feedback_mode = feedback_mode;
  p.integrator = integrator;
  p.info_evaluation = info_evaluation;
  p.initial_projection = initial_projection;
  p.path_stride = emit_paths ? path_stride : 0;
  p.n_traj = n_traj;
  p.seed = seed;
  return p;
}

void RunConfig::validate() const {
  if (!(omega_r_mhz >= 0.0)) fail("omega_r_mhz", "must be >= 0");
  if (!(k_khz >= 0.0)) fail("k_khz", "must be >= 0");
  if (!(eta > 0.0 && eta <= 1.0)) fail("eta", fmt::format("{} is outside (0, 1]", eta));
  if (!(beta >= 0.0)) fail("beta", "must be >= 0");
  if (!(tau_us >= 0.0)) fail("tau_us", "must be >= 0");
  if (!(dt_ns > 0.0)) fail("dt_ns", "must be > 0");
  if (n_traj < 1) fail("n_traj", "must be >= 1");
  if (path_stride < 1) fail("path_stride", "must be >= 1");
  if (bootstrap_b < 100) fail("bootstrap_b", "must be >= 100");
  if (output_dir.empty()) fail("output_dir", "must not be empty");
  try {
    (void)to_params().steps();
  } catch (const Error&) {
    fail("tau_us", fmt::format("tau_us / dt_ns = {} us / {} ns is not a whole number of steps",
                               tau_us, dt_ns));
  }
}

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = {
      "omega_r_mhz", "k_khz",         "eta",         "beta",
      "tau_us",      "dt_ns",         "n_traj",      "seed",
      "mode",        "feedback_mode", "initial_projection",
      "path_stride", "emit_paths",    "bootstrap_b", "output_dir",
      "integrator",  "info_evaluation", "workers",
  };
  return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view raw) {
  const std::string_view v = unquote(trim(raw));
  if (key == "omega_r_mhz") {
    cfg.omega_r_mhz = to_double(key, v);
  } else if (key == "k_khz") {
    cfg.k_khz = to_double(key, v);
  } else if (key == "eta") {
    cfg.eta = to_double(key, v);
  } else if (key == "beta") {
    cfg.beta = to_double(key, v);
  } else if (key == "tau_us") {
    cfg.tau_us = to_double(key, v);
  } else if (key == "dt_ns") {
    cfg.dt_ns = to_double(key, v);
  } else if (key == "n_traj") {
    cfg.n_traj = to_integer<std::uint64_t>(key, v);
  } else if (key == "seed") {
    cfg.seed = to_integer<std::uint64_t>(key, v);
  } else if (key == "mode") {
    if (v == "hierarchy") {
      cfg.mode = SegmentMode::hierarchy;
    } else if (v == "filter-only" || v == "filter_only") {
      cfg.mode = SegmentMode::filter_only;
    } else {
      fail(key, fmt::format("expected hierarchy|filter-only, got '{}'", v));
    }
  } else if (key == "feedback_mode") {
    if (v == "ideal") {
      cfg.feedback_mode = FeedbackMode::ideal;
    } else if (v == "randomized") {
      cfg.feedback_mode = FeedbackMode::randomized;
    } else {
      fail(key, fmt::format("expected ideal|randomized, got '{}'", v));
    }
  } else if (key == "initial_projection") {
    cfg.initial_projection = to_bool(key, v);
  } else if (key == "path_stride") {
    cfg.path_stride = to_integer<std::size_t>(key, v);
  } else if (key == "emit_paths") {
    cfg.emit_paths = to_bool(key, v);
  } else if (key == "bootstrap_b") {
    cfg.bootstrap_b = to_integer<std::size_t>(key, v);
  } else if (key == "output_dir") {
    cfg.output_dir = std::string(v);
  } else if (key == "integrator") {
    if (v == "kraus") {
      cfg.integrator = Integrator::kraus;
    } else if (v == "euler") {
      cfg.integrator = Integrator::euler;
    } else {
      fail(key, fmt::format("expected kraus|euler, got '{}'", v));
    }
  } else if (key == "info_evaluation") {
    if (v == "post-feedback" || v == "post_feedback") {
      cfg.info_evaluation = InfoEvaluation::post_feedback;
    } else if (v == "pre-feedback" || v == "pre_feedback") {
      cfg.info_evaluation = InfoEvaluation::pre_feedback;
    } else {
      fail(key, fmt::format("expected post-feedback|pre-feedback, got '{}'", v));
    }
  } else if (key == "workers") {
    cfg.workers = to_integer<unsigned>(key, v);
  } else {
    fail(key, "unknown key");
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::config,
                  fmt::format("line {}: expected 'key = value', got '{}'", line_no, line));
    }
    apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::config, fmt::format("cannot read config file '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<std::pair<std::string, std::string>> echo(const RunConfig& cfg) {
  return {
      {"omega_r_mhz", fmt_double(cfg.omega_r_mhz)},
      {"k_khz", fmt_double(cfg.k_khz)},
      {"eta", fmt_double(cfg.eta)},
      {"beta", fmt_double(cfg.beta)},
      {"tau_us", fmt_double(cfg.tau_us)},
      {"dt_ns", fmt_double(cfg.dt_ns)},
      {"n_traj", std::to_string(cfg.n_traj)},
      {"seed", std::to_string(cfg.seed)},
      {"mode", std::string(to_string(cfg.mode))},
      {"feedback_mode", std::string(to_string(cfg.feedback_mode))},
      {"initial_projection", fmt_bool(cfg.initial_projection)},
      {"path_stride", std::to_string(cfg.path_stride)},
      {"emit_paths", fmt_bool(cfg.emit_paths)},
      {"bootstrap_b", std::to_string(cfg.bootstrap_b)},
      {"integrator", std::string(to_string(cfg.integrator))},
      {"info_evaluation", std::string(to_string(cfg.info_evaluation))},
  };
}

std::string config_digest(const RunConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& [k, v] : echo(cfg)) {
    for (const char c : k + "=" + v + "\n") {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
  }
  return fmt::format("{:016x}", h);
}

}  // namespace qdemon::cli
