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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "w2bgp/run_record.hpp"
#include "w2bgp/tasks.hpp"

namespace w2bgp {

enum class TaskKind { kFederated, kBatch, kMfbo };

std::string_view task_name(TaskKind task);
std::optional<TaskKind> parse_task(std::string_view name);

struct ExperimentConfig {
  TaskKind task = TaskKind::kFederated;
  std::string problem;
  std::size_t d = 1;
  std::vector<Schema> schemas;  // empty: the task's three schemas
  std::size_t replicates = 30;
  std::uint64_t base_seed = 0;
  std::filesystem::path output_dir;
  std::filesystem::path mf_definitions;  // empty: default_mf_definitions_path()
  TaskConfig task_config;                // seed and schema are set per run
};

// Plain-text key = value lines under [experiment], [bo] and [mfbo] headers;
// '#' starts a comment. Throws ConfigError as "<origin>:<line>: <field>: ...".
ExperimentConfig parse_config(std::string_view text, const std::string& origin = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

// Checks problem, dimension and schemas against the task. Throws ConfigError
// naming the field.
void validate_config(const ExperimentConfig& cfg);

std::vector<Schema> effective_schemas(const ExperimentConfig& cfg);

struct ReplicateOutcome {
  TaskKind task = TaskKind::kFederated;
  Schema schema = Schema::kEqual;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  std::size_t d = 1;
  RunRecord record;  // federated: the pooled system record
  double y0 = 0.0;
  double ystar = 0.0;
};

// Replicate r runs with seed base_seed + r under every schema.
ReplicateOutcome run_replicate(const ExperimentConfig& cfg, Schema schema, std::size_t r);

// Raised by run_experiment when a replicate fails numerically.
struct ReplicateFailure {
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  Schema schema = Schema::kEqual;
  std::string message;
};

// Runs every (schema, replicate) pair on up to `jobs` threads and writes the
// result files. Returns the first failure in (schema, replicate) order, if any.
std::optional<ReplicateFailure> run_experiment(const ExperimentConfig& cfg, std::size_t jobs,
                                               std::ostream* progress);

// Reporting. Numbers are written with 12 significant digits.
std::string format_number(double value);

// Columns: iteration, agent_or_source, x1..xd, y, best_seen, gap.
void write_run_csv(std::ostream& out, const ReplicateOutcome& outcome);

struct ReplicateRow {
  std::string schema;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  double augc = 0.0;
  double best_seen = 0.0;
  std::optional<double> ground_truth_usage;  // MFBO only, percent
  std::vector<double> gap;
};

ReplicateRow replicate_row(const ReplicateOutcome& outcome);

// replicates.csv and gap_curves.csv in `dir`.
void write_replicate_tables(const std::filesystem::path& dir, std::span<const ReplicateRow> rows);
std::vector<ReplicateRow> read_replicate_tables(const std::filesystem::path& dir);

double median(std::vector<double> values);        // midpoint for even counts
double sample_std(std::span<const double> values);  // n − 1 denominator

struct SchemaSummary {
  std::string schema;
  std::size_t replicates = 0;
  double augc_median = 0.0;
  double augc_std = 0.0;
  double best_median = 0.0;
  double best_std = 0.0;
  std::optional<double> usage_median;
  // U-test p-values against every other schema, in schema order.
  std::vector<std::optional<double>> p_augc;
  std::vector<std::optional<double>> p_best;
};

// Schemas keep their order of first appearance.
std::vector<SchemaSummary> summarize(std::span<const ReplicateRow> rows);
void write_summary_csv(std::ostream& out, std::span<const SchemaSummary> summaries);

// Reads the replicate tables in `dir` and writes summary.csv.
void summarize_directory(const std::filesystem::path& dir);

struct CurveGroup {
  std::string name;
  std::vector<std::vector<double>> curves;
};

// SVG with the median curve and a ±1 std band per group. The second line is
// a comment holding `timestamp`.
std::string render_gap_plot(std::span<const CurveGroup> groups, const std::string& title,
                            const std::string& timestamp);

// Reads gap_curves.csv in `dir` and writes gap_plot.svg.
void plot_directory(const std::filesystem::path& dir, const std::string& title);

}  // namespace w2bgp
