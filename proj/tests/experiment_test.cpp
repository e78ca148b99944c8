// Copyright 2026 The W2BGP Authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "w2bgp/error.hpp"
#include "w2bgp/experiment.hpp"

namespace w2bgp {
namespace {

namespace fs = std::filesystem;

std::string config_error(const std::string& text) {
  try {
    parse_config(text, "exp.ini");
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfigError);
    return e.what();
  }
  ADD_FAILURE() << "config accepted:\n" << text;
  return {};
}

std::string validation_error(const std::string& text) {
  try {
    validate_config(parse_config(text, "exp.ini"));
  } catch (const Error& e) {
    return e.what();
  }
  ADD_FAILURE() << "config validated:\n" << text;
  return {};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(fields);
  }
  return rows;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("w2bgp_exp_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

const char* kSmallFederated = R"(# small run
[experiment]
task = federated
problem = problem_05
d = 1
schemas = self-confident, equal
replicates = 3
seed = 40

[bo]
budget = 8
kernels = squaredexponential, matern52
)";

TEST(Config, ParsesEveryKey) {
  const ExperimentConfig cfg = parse_config(R"(
[experiment]
task = mfbo
problem = forrester
d = 1
schemas = fidelity, equal
replicates = 5
seed = 17
output = out/dir
[bo]
n0 = 3
budget = 12
beta = 1.5
kernels = exponential
dedup_tol = 0.01
noise = 1e-8
acquisition_budget = 500
[mfbo]
costs = 1, 0.5, 0.25, 0.125
epsilon = 1e-6
definitions = defs.txt
)");
  EXPECT_EQ(cfg.task, TaskKind::kMfbo);
  EXPECT_EQ(cfg.problem, "forrester");
  EXPECT_EQ(cfg.schemas, (std::vector<Schema>{Schema::kFidelity, Schema::kEqual}));
  EXPECT_EQ(cfg.replicates, 5u);
  EXPECT_EQ(cfg.base_seed, 17u);
  EXPECT_EQ(cfg.output_dir, fs::path("out/dir"));
  EXPECT_EQ(cfg.task_config.n0, 3u);
  EXPECT_EQ(cfg.task_config.budget, 12u);
  EXPECT_EQ(cfg.task_config.beta, 1.5);
  EXPECT_EQ(cfg.task_config.kernels, (std::vector<KernelKind>{KernelKind::kExponential}));
  EXPECT_EQ(cfg.task_config.batch_dedup_tol, 0.01);
  EXPECT_EQ(cfg.task_config.noise_variance, 1e-8);
  EXPECT_EQ(cfg.task_config.acquisition_budget, 500u);
  EXPECT_EQ(cfg.task_config.costs, (std::vector<double>{1, 0.5, 0.25, 0.125}));
  EXPECT_EQ(cfg.task_config.mf_epsilon, 1e-6);
  EXPECT_EQ(cfg.mf_definitions, fs::path("defs.txt"));
}

TEST(Config, ErrorsNameLineAndField) {
  EXPECT_NE(config_error("[experiment]\ntask = federated\nproblem = p\nd = zero\n")
                .find("exp.ini:4: experiment.d"),
            std::string::npos);
  EXPECT_NE(config_error("[experiment]\ntask = serial\n").find("exp.ini:2: experiment.task"),
            std::string::npos);
  EXPECT_NE(config_error("[experiment]\ntask = batch\nproblem = p\n[bo]\nkernels = rbf\n")
                .find("exp.ini:5: bo.kernels"),
            std::string::npos);
  EXPECT_NE(config_error("[experiment]\ntask = batch\nproblem = p\n[bo]\nbeta = -1\n")
                .find("exp.ini:5: bo.beta"),
            std::string::npos);
  EXPECT_NE(config_error("[experiment]\ntask = batch\nproblem = p\nwidth = 3\n")
                .find("exp.ini:4: experiment.width"),
            std::string::npos);
  EXPECT_NE(config_error("[plots]\n").find("exp.ini:1: section"), std::string::npos);
  EXPECT_NE(config_error("[experiment]\ntask = batch\n").find("experiment.problem"),
            std::string::npos);
  EXPECT_NE(config_error("task = batch\n").find("exp.ini:1"), std::string::npos);
}

TEST(Config, ValidationNamesField) {
  EXPECT_NE(validation_error("[experiment]\ntask = federated\nproblem = nope\n")
                .find("experiment.problem"),
            std::string::npos);
  EXPECT_NE(validation_error("[experiment]\ntask = federated\nproblem = hartmann3\nd = 2\n")
                .find("experiment.d"),
            std::string::npos);
  EXPECT_NE(validation_error("[experiment]\ntask = batch\nproblem = problem_05\n"
                             "schemas = fidelity\n")
                .find("experiment.schemas"),
            std::string::npos);
  EXPECT_NE(validation_error("[experiment]\ntask = federated\nproblem = problem_05\n"
                             "[bo]\nn0 = 5\nbudget = 4\n")
                .find("bo.budget"),
            std::string::npos);
  EXPECT_NE(validation_error("[experiment]\ntask = mfbo\nproblem = forrester\n"
                             "[mfbo]\ncosts = 1, 2\n")
                .find("mfbo.costs"),
            std::string::npos);
  EXPECT_NE(validation_error("[experiment]\ntask = mfbo\nproblem = forrester\n"
                             "[mfbo]\ndefinitions = /nonexistent/defs.txt\n")
                .find("mfbo.definitions"),
            std::string::npos);
  EXPECT_NE(validation_error("[experiment]\ntask = mfbo\nproblem = paciorek\nd = 7\n")
                .find("experiment.d"),
            std::string::npos);
}

TEST(Statistics, MedianAndSampleStd) {
  EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(median({4.0, 1.0, 3.0, 2.0}), 2.5);
  EXPECT_EQ(median({7.0}), 7.0);
  const std::vector<double> v{2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0};
  EXPECT_DOUBLE_EQ(sample_std(v), std::sqrt(32.0 / 7.0));
}

TEST(Report, NumbersUseTwelveSignificantDigits) {
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(-1.5), "-1.5");
  EXPECT_EQ(format_number(1e-20), "1e-20");
}

TEST(Report, ReplicateTablesRoundTrip) {
  TempDir dir;
  std::vector<ReplicateRow> rows;
  for (std::size_t r = 0; r < 3; ++r) {
    rows.push_back({"fidelity", r, 10 + r, 0.25 * static_cast<double>(r), -1.0 / 3.0, 40.0 + r,
                    {0.0, 0.5, 1.0}});
  }
  write_replicate_tables(dir.path(), rows);
  const std::vector<ReplicateRow> back = read_replicate_tables(dir.path());
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t r = 0; r < 3; ++r) {
    EXPECT_EQ(back[r].schema, "fidelity");
    EXPECT_EQ(back[r].seed, 10 + r);
    EXPECT_NEAR(back[r].augc, rows[r].augc, 1e-12);
    EXPECT_NEAR(back[r].best_seen, -1.0 / 3.0, 1e-12);
    ASSERT_TRUE(back[r].ground_truth_usage.has_value());
    EXPECT_NEAR(*back[r].ground_truth_usage, 40.0 + r, 1e-12);
    EXPECT_EQ(back[r].gap, rows[r].gap);
  }
}

TEST(Report, SummaryComparesEverySchemaPair) {
  std::vector<ReplicateRow> rows;
  for (const char* schema : {"a", "b", "c"}) {
    for (std::size_t r = 0; r < 5; ++r) {
      rows.push_back({schema, r, r, 0.1 * static_cast<double>(r) + (schema[0] - 'a'), 1.0,
                      std::nullopt, {1.0}});
    }
  }
  const std::vector<SchemaSummary> s = summarize(rows);
  ASSERT_EQ(s.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    ASSERT_EQ(s[i].p_augc.size(), 3u);
    EXPECT_FALSE(s[i].p_augc[i].has_value());
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) {
        ASSERT_TRUE(s[i].p_augc[j].has_value());
        EXPECT_EQ(*s[i].p_augc[j], *s[j].p_augc[i]);
      }
    }
  }
  EXPECT_NEAR(s[1].augc_median, 1.2, 1e-12);
}

TEST(Report, GapPlotIsWellFormedSvg) {
  const std::vector<CurveGroup> groups{{"equal", {{0.0, 0.5, 1.0}, {0.0, 0.25, 0.75}}},
                                       {"a<b&c", {{0.1, 0.2, 0.3}}}};
  const std::string svg = render_gap_plot(groups, "title & <more>", "2026-01-01T00:00:00Z");
  EXPECT_EQ(svg.find("<svg"), svg.find('\n', svg.find('\n') + 1) + 1);
  EXPECT_NE(svg.find(">queries<"), std::string::npos);
  EXPECT_NE(svg.find(">gap metric<"), std::string::npos);
  EXPECT_NE(svg.find("a&lt;b&amp;c"), std::string::npos);
  TempDir dir;
  const fs::path file = dir.path() / "plot.svg";
  std::ofstream(file) << svg;
  const std::string cmd = "python3 -c \"import sys, xml.etree.ElementTree as E; E.parse(sys.argv[1])\" " +
                          file.string();
  EXPECT_EQ(std::system(cmd.c_str()), 0) << "SVG failed to parse";
}

TEST(Experiment, SummaryMatchesIndependentRecompute) {
  TempDir dir;
  ExperimentConfig cfg = parse_config(kSmallFederated);
  cfg.output_dir = dir.path();
  ASSERT_FALSE(run_experiment(cfg, 2, nullptr).has_value());
  EXPECT_TRUE(fs::exists(dir.path() / "runs" / "equal_rep002.csv"));
  EXPECT_TRUE(fs::exists(dir.path() / "gap_plot.svg"));

  const auto table = read_csv(dir.path() / "replicates.csv");
  ASSERT_EQ(table.size(), 7u);
  std::map<std::string, std::vector<double>> augc;
  std::map<std::string, std::vector<double>> best;
  for (std::size_t i = 1; i < table.size(); ++i) {
    augc[table[i][0]].push_back(std::stod(table[i][3]));
    best[table[i][0]].push_back(std::stod(table[i][4]));
  }
  const auto summary = read_csv(dir.path() / "summary.csv");
  ASSERT_EQ(summary.size(), 3u);
  for (std::size_t i = 1; i < summary.size(); ++i) {
    std::vector<double> a = augc.at(summary[i][0]);
    std::sort(a.begin(), a.end());
    EXPECT_NEAR(std::stod(summary[i][2]), a[1], 1e-9);
    double mean = (a[0] + a[1] + a[2]) / 3.0;
    double ss = 0.0;
    for (double v : a) ss += (v - mean) * (v - mean);
    EXPECT_NEAR(std::stod(summary[i][3]), std::sqrt(ss / 2.0), 1e-9);
    std::vector<double> b = best.at(summary[i][0]);
    std::sort(b.begin(), b.end());
    EXPECT_NEAR(std::stod(summary[i][4]), b[1], 1e-9);
  }

  // Each run file: header plus one row per logged query, 12 significant digits.
  const auto run = read_csv(dir.path() / "runs" / "self-confident_rep000.csv");
  EXPECT_EQ(run.front(), (std::vector<std::string>{"iteration", "agent_or_source", "x1", "y",
                                                    "best_seen", "gap"}));
}

TEST(Experiment, SummarizeDirectoryIsIdempotent) {
  TempDir dir;
  ExperimentConfig cfg = parse_config(kSmallFederated);
  cfg.output_dir = dir.path();
  cfg.replicates = 2;
  ASSERT_FALSE(run_experiment(cfg, 1, nullptr).has_value());
  const std::string first = slurp(dir.path() / "summary.csv");
  fs::remove(dir.path() / "summary.csv");
  summarize_directory(dir.path());
  EXPECT_EQ(slurp(dir.path() / "summary.csv"), first);
}

// --- command-line front end ------------------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = std::string(W2BGP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string strip_timestamp(const std::string& svg) {
  std::istringstream in(svg);
  std::ostringstream out;
  std::string line;
  for (int i = 0; std::getline(in, line); ++i) {
    if (i != 1) out << line << '\n';
  }
  return out.str();
}

TEST(Cli, RunIsDeterministicAcrossInvocations) {
  TempDir dir;
  const fs::path config = dir.path() / "small.ini";
  std::ofstream(config) << kSmallFederated;
  ASSERT_EQ(run_cli("run " + config.string() + " --replicates 2 --jobs 2 --out " +
                    (dir.path() / "a").string()),
            0);
  ASSERT_EQ(run_cli("run " + config.string() + " --replicates 2 --jobs 1 --out " +
                    (dir.path() / "b").string()),
            0);
  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir.path() / "a")) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), dir.path() / "a");
    const fs::path other = dir.path() / "b" / rel;
    ASSERT_TRUE(fs::exists(other)) << rel;
    if (rel.extension() == ".svg") {
      EXPECT_EQ(strip_timestamp(slurp(entry.path())), strip_timestamp(slurp(other))) << rel;
    } else {
      EXPECT_EQ(slurp(entry.path()), slurp(other)) << rel;
    }
    ++compared;
  }
  EXPECT_GE(compared, 8u);

  ASSERT_EQ(run_cli("summarize " + (dir.path() / "a").string()), 0);
  ASSERT_EQ(run_cli("plot " + (dir.path() / "a").string()), 0);
  EXPECT_EQ(slurp(dir.path() / "a" / "summary.csv"), slurp(dir.path() / "b" / "summary.csv"));
}

TEST(Cli, ExitCodes) {
  TempDir dir;
  const fs::path bad = dir.path() / "bad.ini";
  std::ofstream(bad) << "[experiment]\ntask = federated\nproblem = nope\n";
  EXPECT_EQ(run_cli("run " + bad.string() + " --out " + dir.path().string()), 2);
  const fs::path broken = dir.path() / "broken.ini";
  std::ofstream(broken) << "[experiment\n";
  EXPECT_EQ(run_cli("run " + broken.string()), 2);
  EXPECT_EQ(run_cli("run"), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("list-problems"), 0);

  // Non-finite ground-truth values surface as a numerical failure.
  const fs::path nan_cfg = dir.path() / "nan.ini";
  std::ofstream(nan_cfg) << "[experiment]\ntask = mfbo\nproblem = paciorek\nd = 2\nreplicates = 1\n"
                            "[bo]\nbudget = 6\n[mfbo]\ndefinitions = "
                         << (dir.path() / "nan_defs.txt").string() << "\n";
  std::ofstream(dir.path() / "nan_defs.txt")
      << "paciorek; 2; 1; 1.0; 1.0; log(x1 - 0.65)\npaciorek; 2; 2; 0.5; 0.5; x1\n";
  EXPECT_EQ(run_cli("run " + nan_cfg.string() + " --out " + (dir.path() / "nan").string()), 3);
}

}  // namespace
}  // namespace w2bgp
