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

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qdemon/cli/config.hpp"
#include "qdemon/cli/runner.hpp"
#include "qdemon/error.hpp"

namespace {

using qdemon::cli::RunConfig;

// Every config key doubles as a --flag on each subcommand; flags win over
// the config file.
struct Overrides {
  std::string config_file;
  std::map<std::string, std::string> values;

  void attach(CLI::App* app) {
    app->add_option("-c,--config", config_file, "key=value configuration file");
    for (const auto key : qdemon::cli::config_keys()) {
      const std::string name(key);
      app->add_option("--" + name, values[name], "override config key " + name);
    }
  }

  RunConfig resolve() const {
    RunConfig cfg;
    if (!config_file.empty()) cfg = qdemon::cli::parse_config_file(config_file);
    for (const auto& [k, v] : values) {
      if (!v.empty()) qdemon::cli::apply_setting(cfg, k, v);
    }
    cfg.validate();
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monitored-qubit Maxwell demon simulator"};
  app.require_subcommand(1);

  Overrides run_opts;
  auto* run = app.add_subcommand("run", "simulate n_traj protocol runs");
  run_opts.attach(run);

  Overrides sweep_opts;
  std::string axis_name;
  std::vector<double> values;
  auto* sweep = app.add_subcommand("sweep", "sweep tau or beta and write sweep.csv");
  sweep_opts.attach(sweep);
  sweep->add_option("--axis", axis_name, "sweep axis")
      ->required()
      ->check(CLI::IsMember({"tau", "beta"}));
  sweep->add_option("--values", values, "sorted axis values (default grid when omitted)")
      ->delimiter(',');

  Overrides check_opts;
  auto* check = app.add_subcommand("check", "run reduced invariant suites");
  check_opts.attach(check);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return qdemon::cli::cmd_run(run_opts.resolve(), std::cerr);
    if (sweep->parsed()) {
      const auto axis = axis_name == "tau" ? qdemon::SweepAxis::tau : qdemon::SweepAxis::beta;
      if (values.empty()) {
        values = axis == qdemon::SweepAxis::tau ? qdemon::default_tau_grid()
                                                : qdemon::default_beta_grid();
      }
      return qdemon::cli::cmd_sweep(sweep_opts.resolve(), axis, values, std::cerr);
    }
    if (check->parsed()) return qdemon::cli::cmd_check(check_opts.resolve(), std::cout);
  } catch (const qdemon::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
