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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "bo_common.hpp"
#include "w2bgp/error.hpp"

namespace w2bgp {
namespace {

double infinity_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

RunRecord run_batch(const TestProblem& problem, const TaskConfig& cfg) {
  if (cfg.schema == Schema::kFidelity || cfg.schema == Schema::kRescaled) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(schema_name(cfg.schema)) + " is not a batch schema");
  }
  const auto start = std::chrono::steady_clock::now();
  const std::size_t d = problem.d;
  const std::size_t M = cfg.kernels.size();
  if (M == 0) throw Error(ErrorKind::kInvalidArgument, "no kernels configured");
  const std::size_t n0 = resolved_n0(cfg, d);
  const std::size_t N = resolved_budget(cfg, d);

  const std::vector<Point> design = initial_design(cfg, d);
  std::vector<double> design_y(n0);
  RunRecord record;
  record.source_count = M;
  for (std::size_t i = 0; i < n0; ++i) {
    const Point x = problem.domain.from_unit(design[i]);
    design_y[i] = problem.objective(x);
    detail::log_query(record, 0, 0, x, design_y[i]);
  }
  const double y0 = detail::min_of(design_y);
  Dataset data = Dataset::from_raw(design, design_y);

  for (std::size_t it = 1; data.size() < N; ++it) {
    std::vector<GpModel> models;
    models.reserve(M);
    for (KernelKind kind : cfg.kernels) models.push_back(fit_gp(data, kind, cfg.noise_variance));
    std::vector<ModelPredictor> predictors(models.begin(), models.end());
    std::vector<const Predictor*> handles;
    for (const ModelPredictor& p : predictors) handles.push_back(&p);
    const Coordinator coordinator(handles, cfg.beta, detail::lcb_search(cfg, d, it));

    std::vector<std::pair<std::size_t, Point>> batch;
    for (std::size_t m = 0; m < M; ++m) {
      Point u = coordinator.propose(schema_weights(cfg.schema, M, m));
      const bool duplicate = std::any_of(batch.begin(), batch.end(), [&](const auto& kept) {
        return infinity_distance(kept.second, u) < cfg.batch_dedup_tol;
      });
      if (!duplicate) batch.emplace_back(m, std::move(u));
    }
    record.batch_sizes.push_back(batch.size());
    for (auto& [m, u] : batch) {
      const Point x = problem.domain.from_unit(u);
      const double y = problem.objective(x);
      data.append(std::move(u), y);
      detail::log_query(record, it, m, x, y);
    }
  }

  // One gap value per evaluation, in evaluation order, over the first N.
  for (std::size_t i = 0; i < N; ++i) record.best_seen_curve.push_back(record.entries[i].best_seen);
  detail::finish_record(record, y0, problem.optimum_value);
  record.wall_seconds = detail::seconds_since(start);
  return record;
}

}  // namespace w2bgp
