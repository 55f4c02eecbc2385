// Copyright 2026 The nrq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nrq/experiments.hpp"

namespace ex = nrq::experiments;

int main(int argc, char** argv) {
  CLI::App app{"nrq: nonreciprocal open-system experiments"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "print the experiment registry");

  auto* run = app.add_subcommand("run", "run one experiment");
  std::string name;
  std::string config_path;
  ex::RunOptions opts;
  run->add_option("experiment", name, "experiment name")->required();
  run->add_option("--config", config_path, "key = value configuration file")->required();
  run->add_option("--out", opts.out_dir, "output directory");
  run->add_option("--seed", opts.seed, "random seed");
  run->add_option("--jobs", opts.jobs, "parallel sweep points")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ex::kExitConfig;
  }

  if (list->parsed()) {
    for (const auto& e : ex::registry()) std::cout << e.name << "\t" << e.summary << "\n";
    return ex::kExitOk;
  }

  ex::Config config;
  try {
    config = ex::Config::load(config_path);
  } catch (const ex::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ex::kExitConfig;
  }
  const ex::RunSummary s = ex::run_experiment(name, config, opts);
  if (!s.message.empty()) std::cerr << s.message << "\n";
  if (!s.csv_path.empty()) std::cout << s.csv_path << "\n";
  if (!s.manifest_path.empty()) std::cout << s.manifest_path << "\n";
  return s.exit_code;
}
