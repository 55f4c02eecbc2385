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

#include <Eigen/Core>
#include <boost/version.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nrq/errors.hpp"
#include "nrq/experiments.hpp"

namespace nrq::experiments {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string compiler_version() {
#if defined(__clang__)
  return std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  return "gcc " + std::to_string(__GNUC__) + "." + std::to_string(__GNUC_MINOR__) + "." +
         std::to_string(__GNUC_PATCHLEVEL__);
#else
  return "unknown";
#endif
}

std::string boost_version() {
  return std::to_string(BOOST_VERSION / 100000) + "." + std::to_string(BOOST_VERSION / 100 % 1000) + "." +
         std::to_string(BOOST_VERSION % 100);
}

std::string eigen_version() {
  return std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
         std::to_string(EIGEN_MINOR_VERSION);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

}  // namespace

const std::vector<Experiment>& registry() {
  static const std::vector<Experiment> r = {
      {"fig3a", "gate infidelity of the cavity-qubit-reservoir model vs kappa_c/J", 1, run_fig3a},
      {"fig3b", "cavity and conditional qubit isolation at t = pi/Gamma_eff", 1, run_fig3b},
      {"fig4b", "conditional two-mode isolation for equal and unequal rates", 1, run_fig4b},
      {"fig4c", "log-negativity between the two modes and the qubit", 1, run_fig4c},
      {"bounds", "optimized long-time B isolation against the closed-form bounds", 1, run_bounds},
      {"gate-demo", "stabilized gate protocol including the dark state", 1, run_gate_demo},
      {"suite", "all acceptance checks", 1, run_suite},
  };
  return r;
}

const Experiment* find_experiment(const std::string& name) {
  for (const auto& e : registry()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

RunSummary run_experiment(const std::string& name, Config config, const RunOptions& opts) {
  RunSummary s;
  const Experiment* exp = find_experiment(name);
  if (!exp) {
    s.exit_code = kExitConfig;
    s.message = "unknown experiment '" + name + "'";
    return s;
  }
  if (opts.jobs < 1) {
    s.exit_code = kExitConfig;
    s.message = "jobs must be at least 1";
    return s;
  }

  const auto start = std::chrono::steady_clock::now();
  ExperimentOutput out;
  std::string status = "ok";
  try {
    RunContext ctx{config, opts.seed, opts.jobs};
    out = exp->run(ctx);
  } catch (const ConfigError& e) {
    s.exit_code = kExitConfig;
    s.message = std::string("config error: ") + e.what();
    return s;
  } catch (const NumericError& e) {
    s.exit_code = kExitNumeric;
    s.message = std::string("numeric error: ") + e.what();
    status = "numeric_error";
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (s.exit_code == kExitOk && out.flagged_rows > 0) {
    s.exit_code = kExitNumeric;
    s.message = std::to_string(out.flagged_rows) + " flagged row(s)";
    status = "flagged";
  }

  const std::filesystem::path dir(opts.out_dir);
  std::filesystem::create_directories(dir);
  const auto csv = dir / (name + ".csv");
  const auto manifest = dir / "manifest.json";
  if (!out.table.columns.empty()) write_file(csv, out.table.to_csv());

  nlohmann::ordered_json m;
  m["experiment"] = name;
  m["schema_version"] = exp->schema_version;
  m["config"] = config.resolved();
  m["seed"] = opts.seed;
  m["jobs"] = opts.jobs;
  m["versions"] = {{"nrq", kVersion}, {"eigen", eigen_version()}, {"boost", boost_version()},
                   {"compiler", compiler_version()}};
  m["runtime_seconds"] = seconds;
  m["columns"] = out.table.columns;
  m["rows"] = out.table.rows.size();
  m["flagged_rows"] = out.flagged_rows;
  m["status"] = status;
  if (!s.message.empty()) m["message"] = s.message;
  nlohmann::ordered_json timings = nlohmann::ordered_json::object();
  for (const auto& [k, v] : out.timings) timings[k] = v;
  m["timings_seconds"] = timings;
  write_file(manifest, m.dump(2) + "\n");

  s.csv_path = out.table.columns.empty() ? "" : csv.string();
  s.manifest_path = manifest.string();
  return s;
}

}  // namespace nrq::experiments
