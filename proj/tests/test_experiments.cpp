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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nrq/constants.hpp"
#include "nrq/experiments.hpp"

using namespace nrq::experiments;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nrq_test_" + name);
  fs::remove_all(p);
  return p;
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(ParseNumber, PlainAndPiMultiples) {
  EXPECT_DOUBLE_EQ(parse_number("2.5"), 2.5);
  EXPECT_DOUBLE_EQ(parse_number("pi"), nrq::kPi);
  EXPECT_DOUBLE_EQ(parse_number("pi/6"), nrq::kPi / 6.0);
  EXPECT_DOUBLE_EQ(parse_number("-2pi/3"), -2.0 * nrq::kPi / 3.0);
  EXPECT_DOUBLE_EQ(parse_number("2*pi"), 2.0 * nrq::kPi);
  EXPECT_THROW(parse_number("pie"), ConfigError);
  EXPECT_THROW(parse_number("1.5x"), ConfigError);
  EXPECT_THROW(parse_number("pi/0"), ConfigError);
  EXPECT_THROW(parse_number(""), ConfigError);
}

TEST(Config, ParsesAndRecordsDefaults) {
  Config c = Config::parse("# comment\nfig.a = 3 # trailing\nfig.list = 1, 2,4\n\nfig.flag = no\n");
  EXPECT_EQ(c.integer("fig.a", 0), 3);
  EXPECT_EQ(c.integers("fig.list", {}), (std::vector<int>{1, 2, 4}));
  EXPECT_FALSE(c.flag("fig.flag", true));
  EXPECT_DOUBLE_EQ(c.number("fig.missing", 0.25), 0.25);
  EXPECT_EQ(c.resolved().at("fig.missing"), "0.25");
  EXPECT_EQ(c.resolved().at("fig.list"), "1,2,4");
  EXPECT_NO_THROW(c.reject_unused());
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(Config::parse("no equals sign"), ConfigError);
  EXPECT_THROW(Config::parse("a = 1\na = 2"), ConfigError);
  EXPECT_THROW(Config::parse(" = 1"), ConfigError);
  Config c = Config::parse("a = 1.5\nb = maybe\ntypo = 1");
  EXPECT_THROW(c.integer("a", 0), ConfigError);
  EXPECT_THROW(c.flag("b", false), ConfigError);
  EXPECT_THROW(c.reject_unused(), ConfigError);
  EXPECT_THROW(Config::load("/nonexistent/file.cfg"), ConfigError);
}

TEST(Table, CsvQuotesSpecialCells) {
  Table t;
  t.columns = {"a", "b"};
  t.add_row({"1", "x, y"});
  t.add_row({"2", "say \"hi\""});
  EXPECT_EQ(t.to_csv(), "a,b\n1,\"x, y\"\n2,\"say \"\"hi\"\"\"\n");
  EXPECT_THROW(t.add_row({"only one"}), std::logic_error);
}

TEST(ParallelMap, PreservesOrder) {
  const auto v = parallel_map(10, 3, [](int i) { return i * i; });
  ASSERT_EQ(v.size(), 10u);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(v[i], i * i);
}

TEST(Registry, ListsAllExperiments) {
  for (const char* name : {"fig3a", "fig3b", "fig4b", "fig4c", "bounds", "gate-demo", "suite"}) {
    EXPECT_NE(find_experiment(name), nullptr) << name;
  }
  EXPECT_EQ(find_experiment("nope"), nullptr);
}

TEST(RunExperiment, UnknownExperimentIsConfigError) {
  EXPECT_EQ(run_experiment("nope", Config{}, {}).exit_code, kExitConfig);
}

TEST(RunExperiment, InvalidConfigIsConfigError) {
  RunOptions o;
  o.out_dir = scratch_dir("invalid").string();
  EXPECT_EQ(run_experiment("gate-demo", Config::parse("gate-demo.gamma = -1"), o).exit_code, kExitConfig);
  EXPECT_EQ(run_experiment("gate-demo", Config::parse("gate-demo.unknown = 1"), o).exit_code, kExitConfig);
  EXPECT_EQ(run_experiment("fig3a", Config::parse("fig3a.kappa_over_j = 4, 2"), o).exit_code, kExitConfig);
  EXPECT_EQ(run_experiment("fig4b", Config::parse("fig4b.samples = 0"), o).exit_code, kExitConfig);
}

TEST(RunExperiment, GateDemoWritesDeterministicOutput) {
  RunOptions o;
  o.out_dir = scratch_dir("gate1").string();
  const RunSummary a = run_experiment("gate-demo", Config{}, o);
  ASSERT_EQ(a.exit_code, kExitOk) << a.message;
  const std::string csv1 = slurp(a.csv_path);
  o.out_dir = scratch_dir("gate2").string();
  o.jobs = 2;
  const RunSummary b = run_experiment("gate-demo", Config{}, o);
  EXPECT_EQ(csv1, slurp(b.csv_path));
  // ell = 0, 1, 2 plus header
  EXPECT_EQ(count_lines(csv1), 4);
  EXPECT_EQ(csv1.substr(0, csv1.find('\n')), "ell,dark,ready,infidelity,state_deviation,flag");

  const auto m = nlohmann::json::parse(slurp(a.manifest_path));
  EXPECT_EQ(m["experiment"], "gate-demo");
  EXPECT_EQ(m["rows"], 3);
  EXPECT_EQ(m["status"], "ok");
  EXPECT_EQ(m["config"]["gate-demo.theta"], "0.523598775598299");
  EXPECT_TRUE(m["versions"].contains("eigen"));
  EXPECT_TRUE(m.contains("runtime_seconds"));
}

TEST(RunExperiment, RowCountMatchesGrid) {
  RunOptions o;
  o.out_dir = scratch_dir("fig4c").string();
  const RunSummary s = run_experiment("fig4c", Config::parse("fig4c.samples = 6\nfig4c.t_max_gamma = 3"), o);
  ASSERT_EQ(s.exit_code, kExitOk) << s.message;
  EXPECT_EQ(count_lines(slurp(s.csv_path)), 1 + 7);

  o.out_dir = scratch_dir("fig3a").string();
  const RunSummary f = run_experiment("fig3a", Config::parse("fig3a.kappa_over_j = 4, 16\nfig3a.ell = 1"), o);
  EXPECT_EQ(count_lines(slurp(f.csv_path)), 1 + 2);
}

TEST(RunExperiment, FlaggedRowsGiveNumericExit) {
  // A far too short horizon leaves the gate unsteady.
  RunOptions o;
  o.out_dir = scratch_dir("flagged").string();
  const RunSummary s =
      run_experiment("fig3a", Config::parse("fig3a.kappa_over_j = 8\nfig3a.ell = 1\nfig3a.t_gamma = 0.5"), o);
  EXPECT_EQ(s.exit_code, kExitNumeric);
  const std::string csv = slurp(s.csv_path);
  EXPECT_NE(csv.find("unsteady"), std::string::npos);
  const auto m = nlohmann::json::parse(slurp(s.manifest_path));
  EXPECT_EQ(m["status"], "flagged");
}

TEST(RunExperiment, BoundsStayBelowClosedForm) {
  RunOptions o;
  o.out_dir = scratch_dir("bounds").string();
  const RunSummary s = run_experiment("bounds", Config::parse("bounds.theta = pi/6, pi/2"), o);
  EXPECT_EQ(s.exit_code, kExitOk) << s.message;
}
