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

#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "w2bgp/error.hpp"
#include "w2bgp/experiment.hpp"

namespace w2bgp {
namespace {

std::string run_file_name(Schema schema, std::size_t replicate) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%s_rep%03zu.csv", std::string(schema_name(schema)).c_str(),
                replicate);
  return buffer;
}

}  // namespace

ReplicateOutcome run_replicate(const ExperimentConfig& cfg, Schema schema, std::size_t r) {
  TaskConfig tc = cfg.task_config;
  tc.seed = cfg.base_seed + r;
  tc.schema = schema;

  ReplicateOutcome outcome;
  outcome.task = cfg.task;
  outcome.schema = schema;
  outcome.replicate = r;
  outcome.seed = tc.seed;
  outcome.d = cfg.d;
  switch (cfg.task) {
    case TaskKind::kFederated: {
      const TestProblem problem = make_problem(cfg.problem, cfg.d);
      outcome.record = run_federated(problem, tc).system;
      outcome.ystar = problem.optimum_value;
      break;
    }
    case TaskKind::kBatch: {
      const TestProblem problem = make_problem(cfg.problem, cfg.d);
      outcome.record = run_batch(problem, tc);
      outcome.ystar = problem.optimum_value;
      break;
    }
    case TaskKind::kMfbo: {
      const MultiFidelityProblem problem = make_mf_problem(
          cfg.problem, cfg.d,
          cfg.mf_definitions.empty() ? default_mf_definitions_path() : cfg.mf_definitions);
      outcome.record = run_mfbo(problem, tc);
      outcome.ystar = problem.optimum_value;
      break;
    }
  }
  outcome.y0 = outcome.record.best_seen_curve.at(resolved_n0(tc, cfg.d) - 1);
  return outcome;
}

std::optional<ReplicateFailure> run_experiment(const ExperimentConfig& cfg, std::size_t jobs,
                                               std::ostream* progress) {
  validate_config(cfg);
  const std::vector<Schema> schemas = effective_schemas(cfg);
  const std::size_t total = schemas.size() * cfg.replicates;
  std::vector<std::optional<ReplicateOutcome>> outcomes(total);
  std::vector<std::optional<ReplicateFailure>> failures(total);

  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const Schema schema = schemas[i / cfg.replicates];
      const std::size_t r = i % cfg.replicates;
      try {
        outcomes[i] = run_replicate(cfg, schema, r);
        if (progress != nullptr) {
          const std::lock_guard<std::mutex> lock(log_mutex);
          *progress << schema_name(schema) << " replicate " << r
                    << ": augc=" << format_number(outcomes[i]->record.augc) << " ("
                    << format_number(outcomes[i]->record.wall_seconds) << " s)\n";
        }
      } catch (const std::exception& e) {
        failures[i] = ReplicateFailure{r, cfg.base_seed + r, schema, e.what()};
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, total));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (const auto& f : failures) {
    if (f) return f;
  }

  const std::filesystem::path dir = cfg.output_dir;
  std::filesystem::create_directories(dir / "runs");
  std::vector<ReplicateRow> rows;
  rows.reserve(total);
  for (const auto& outcome : outcomes) {
    std::ofstream out(dir / "runs" / run_file_name(outcome->schema, outcome->replicate),
                      std::ios::binary);
    if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write into " + dir.string());
    write_run_csv(out, *outcome);
    rows.push_back(replicate_row(*outcome));
  }
  write_replicate_tables(dir, rows);
  summarize_directory(dir);
  plot_directory(dir, std::string(task_name(cfg.task)) + " " + cfg.problem +
                          " d=" + std::to_string(cfg.d));
  return std::nullopt;
}

}  // namespace w2bgp
