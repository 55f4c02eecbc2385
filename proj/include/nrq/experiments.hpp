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

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nrq::experiments {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses a real number; also accepts multiples of pi such as "pi/6",
// "-2pi/3" or "2*pi".
double parse_number(const std::string& text);

// Flat "key = value" settings with dotted keys and '#' comments. Every
// lookup records the value actually used, so the resolved configuration
// (including defaults) can be echoed.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  double number(const std::string& key, double fallback);
  int integer(const std::string& key, int fallback);
  bool flag(const std::string& key, bool fallback);
  std::string text(const std::string& key, const std::string& fallback);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  std::vector<int> integers(const std::string& key, const std::vector<int>& fallback);

  const std::map<std::string, std::string>& resolved() const { return resolved_; }
  // Throws ConfigError naming every key that was set but never read.
  void reject_unused() const;

 private:
  const std::string* lookup(const std::string& key);

  std::map<std::string, std::string> values_;
  std::map<std::string, std::string> resolved_;
};

std::string format_number(double v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string to_csv() const;
};

struct ExperimentOutput {
  Table table;
  int flagged_rows = 0;
  // Extra wall-clock measurements for the manifest (never the CSV).
  std::vector<std::pair<std::string, double>> timings;
};

struct RunContext {
  Config& config;
  std::uint64_t seed;
  int jobs;
};

struct Experiment {
  std::string name;
  std::string summary;
  int schema_version;
  std::function<ExperimentOutput(RunContext&)> run;
};

const std::vector<Experiment>& registry();
const Experiment* find_experiment(const std::string& name);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

struct RunOptions {
  std::string out_dir = ".";
  std::uint64_t seed = 20260101;
  int jobs = 1;
};

struct RunSummary {
  int exit_code = kExitOk;
  std::string csv_path;
  std::string manifest_path;
  std::string message;
};

// Runs one experiment and writes <out>/<name>.csv and <out>/manifest.json.
RunSummary run_experiment(const std::string& name, Config config, const RunOptions& opts);

// Order-preserving map over [0, n) with at most `jobs` tasks in flight.
template <class F>
auto parallel_map(int n, int jobs, F&& f) -> std::vector<decltype(f(0))> {
  using T = decltype(f(0));
  std::vector<T> out;
  out.reserve(n);
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) out.push_back(f(i));
    return out;
  }
  for (int start = 0; start < n; start += jobs) {
    std::vector<std::future<T>> wave;
    const int stop = std::min(n, start + jobs);
    for (int i = start; i < stop; ++i) wave.push_back(std::async(std::launch::async, [&f, i] { return f(i); }));
    for (auto& w : wave) out.push_back(w.get());
  }
  return out;
}

// Individual experiments, also used by the acceptance checks.
ExperimentOutput run_fig3a(RunContext& ctx);
ExperimentOutput run_fig3b(RunContext& ctx);
ExperimentOutput run_fig4b(RunContext& ctx);
ExperimentOutput run_fig4c(RunContext& ctx);
ExperimentOutput run_bounds(RunContext& ctx);
ExperimentOutput run_gate_demo(RunContext& ctx);
ExperimentOutput run_suite(RunContext& ctx);

// ---------------------------------------------------------------------------
// Acceptance criteria.

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

inline constexpr int kCriteriaCount = 15;

CriterionResult run_criterion(int id, std::uint64_t seed = 20260101);

}  // namespace nrq::experiments
