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

#include <chrono>
#include <string>

#include "bo_common.hpp"
#include "w2bgp/error.hpp"

namespace w2bgp {
namespace {

void require_federated_schema(Schema schema) {
  if (schema != Schema::kSelfConfident && schema != Schema::kEqual &&
      schema != Schema::kUncooperative) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(schema_name(schema)) + " is not a federated schema");
  }
}

}  // namespace

FederatedResult run_federated(const TestProblem& problem, const TaskConfig& cfg) {
  require_federated_schema(cfg.schema);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t d = problem.d;
  const std::size_t M = cfg.kernels.size();
  if (M == 0) throw Error(ErrorKind::kInvalidArgument, "no kernels configured");
  const std::size_t n0 = resolved_n0(cfg, d);
  const std::size_t N = resolved_budget(cfg, d);

  const std::vector<Point> design = initial_design(cfg, d);
  std::vector<double> design_y(n0);
  for (std::size_t i = 0; i < n0; ++i) {
    design_y[i] = problem.objective(problem.domain.from_unit(design[i]));
  }
  const double y0 = detail::min_of(design_y);

  std::vector<Agent> agents;
  agents.reserve(M);
  FederatedResult result;
  result.agents.resize(M);
  result.system.source_count = M;
  for (std::size_t m = 0; m < M; ++m) {
    agents.emplace_back(cfg.kernels[m], cfg.noise_variance);
    result.agents[m].source_count = 1;
    for (std::size_t i = 0; i < n0; ++i) {
      agents[m].observe(design[i], design_y[i]);
      detail::log_query(result.agents[m], 0, m, problem.domain.from_unit(design[i]),
                        design_y[i]);
    }
  }
  for (std::size_t i = 0; i < n0; ++i) {
    detail::log_query(result.system, 0, 0, problem.domain.from_unit(design[i]), design_y[i]);
    result.system.best_seen_curve.push_back(result.system.entries.back().best_seen);
  }

  std::vector<const Predictor*> handles;
  for (const Agent& a : agents) handles.push_back(&a);

  for (std::size_t it = 1; n0 + it <= N; ++it) {
    for (Agent& a : agents) a.refit();
    const Coordinator coordinator(handles, cfg.beta, detail::lcb_search(cfg, d, it));
    std::vector<Point> queries(M);
    for (std::size_t m = 0; m < M; ++m) {
      queries[m] = coordinator.propose(schema_weights(cfg.schema, M, m));
    }
    for (std::size_t m = 0; m < M; ++m) {
      const Point x = problem.domain.from_unit(queries[m]);
      const double y = problem.objective(x);
      agents[m].observe(queries[m], y);
      detail::log_query(result.agents[m], it, m, x, y);
      detail::log_query(result.system, it, m, x, y);
    }
    result.system.best_seen_curve.push_back(result.system.entries.back().best_seen);
  }

  for (RunRecord& record : result.agents) {
    for (const QueryEntry& e : record.entries) record.best_seen_curve.push_back(e.best_seen);
    detail::finish_record(record, y0, problem.optimum_value);
  }
  detail::finish_record(result.system, y0, problem.optimum_value);
  result.system.wall_seconds = detail::seconds_since(start);
  for (RunRecord& record : result.agents) record.wall_seconds = result.system.wall_seconds;
  return result;
}

RunRecord run_vanilla(const TestProblem& problem, KernelKind kernel, const TaskConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t d = problem.d;
  const std::size_t n0 = resolved_n0(cfg, d);
  const std::size_t N = resolved_budget(cfg, d);

  const std::vector<Point> design = initial_design(cfg, d);
  std::vector<double> design_y(n0);
  RunRecord record;
  for (std::size_t i = 0; i < n0; ++i) {
    const Point x = problem.domain.from_unit(design[i]);
    design_y[i] = problem.objective(x);
    detail::log_query(record, 0, 0, x, design_y[i]);
  }
  const double y0 = detail::min_of(design_y);
  Dataset data = Dataset::from_raw(design, design_y);

  for (std::size_t it = 1; n0 + it <= N; ++it) {
    const GpModel model = fit_gp(data, kernel, cfg.noise_variance);
    const PointScore score = [&](std::span<const double> u) {
      return lcb(model.predict(u), cfg.beta);
    };
    Point u = optimize_acquisition(score, detail::lcb_search(cfg, d, it));
    const Point x = problem.domain.from_unit(u);
    const double y = problem.objective(x);
    data.append(std::move(u), y);
    detail::log_query(record, it, 0, x, y);
  }
  for (const QueryEntry& e : record.entries) record.best_seen_curve.push_back(e.best_seen);
  detail::finish_record(record, y0, problem.optimum_value);
  record.wall_seconds = detail::seconds_since(start);
  return record;
}

}  // namespace w2bgp
