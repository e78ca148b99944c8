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
#include <limits>
#include <string>

#include "bo_common.hpp"
#include "w2bgp/error.hpp"
#include "w2bgp/simd/vecops.hpp"

namespace w2bgp {
namespace {

constexpr std::size_t kTotalQueryCapFactor = 10;

WeightVector mf_weights(Schema schema, const MultiFidelityProblem& problem) {
  switch (schema) {
    case Schema::kFidelity: return weights_fidelity(problem.fidelities);
    case Schema::kRescaled: return weights_rescaled(problem.sources.size());
    case Schema::kEqual: return weights_equal(problem.sources.size());
    case Schema::kSelfConfident:
    case Schema::kUncooperative: break;
  }
  throw Error(ErrorKind::kInvalidArgument,
              std::string(schema_name(schema)) + " is not a multi-fidelity schema");
}

struct Choice {
  std::size_t source = 0;
  Point x;
  double score = 0.0;
};

}  // namespace

RunRecord run_mfbo(const MultiFidelityProblem& problem, const TaskConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t d = problem.d;
  const std::size_t K = problem.sources.size();
  if (K == 0) throw Error(ErrorKind::kInvalidArgument, "problem has no sources");
  const WeightVector lambda = mf_weights(cfg.schema, problem);
  const std::vector<double>& costs = cfg.costs.empty() ? problem.costs : cfg.costs;
  if (costs.size() != K) throw Error(ErrorKind::kLengthMismatch, "one cost per source required");
  for (double c : costs) {
    if (!(c > 0.0)) throw Error(ErrorKind::kInvalidArgument, "costs must be positive");
  }
  const std::size_t n0 = resolved_n0(cfg, d);
  const std::size_t N = resolved_budget(cfg, d);

  RunRecord record;
  record.source_count = K;
  double best = std::numeric_limits<double>::infinity();
  auto log = [&](std::size_t iteration, std::size_t source, Point x, double y) {
    if (source == 0) {
      best = std::min(best, y);
      record.best_seen_curve.push_back(best);
    }
    record.entries.push_back({iteration, source, std::move(x), y, best});
  };

  const std::vector<Point> design = initial_design(cfg, d);
  std::vector<Dataset> data(K);
  for (std::size_t m = 0; m < K; ++m) {
    std::vector<double> ys(n0);
    for (std::size_t i = 0; i < n0; ++i) {
      const Point x = problem.domain.from_unit(design[i]);
      ys[i] = problem.sources[m](x);
      log(0, m, x, ys[i]);
    }
    data[m] = Dataset::from_raw(design, ys);
  }
  const double y0 = best;

  std::size_t ground_truth_queries = n0;
  std::size_t total_queries = K * n0;
  const std::size_t cap = kTotalQueryCapFactor * N;
  for (std::size_t it = 1; ground_truth_queries < N && total_queries < cap; ++it) {
    std::vector<GpModel> models;
    models.reserve(K);
    for (const Dataset& ds : data) {
      models.push_back(fit_gp(ds, KernelKind::kSquaredExponential, cfg.noise_variance));
    }

    AcquisitionSearch search = detail::lcb_search(cfg, d, it);
    search.mode = SearchMode::kMaximize;
    const std::vector<Point> candidates =
        sweep_candidates(d, sweep_size_for(search.budget), search.seed);
    const std::size_t n = candidates.size();
    std::vector<std::vector<Gaussian1D>> preds(K, std::vector<Gaussian1D>(n));
    std::vector<double> bary_mean(n, 0.0);
    std::vector<double> bary_sd(n, 0.0);
    std::vector<double> column(n);
    for (std::size_t m = 0; m < K; ++m) {
      ModelPredictor(models[m]).predict_batch(candidates, preds[m]);
      for (std::size_t i = 0; i < n; ++i) column[i] = preds[m][i].mean;
      simd::axpy(lambda[m], column, bary_mean);
      for (std::size_t i = 0; i < n; ++i) column[i] = preds[m][i].sd;
      simd::axpy(lambda[m], column, bary_sd);
    }

    Choice chosen;
    for (std::size_t m = 0; m < K; ++m) {
      std::vector<double> scores(n);
      for (std::size_t i = 0; i < n; ++i) {
        scores[i] = mf_score(preds[m][i], {bary_mean[i], bary_sd[i]}, costs[m], best, cfg.beta,
                             cfg.mf_epsilon);
      }
      const PointScore score = [&](std::span<const double> x) {
        return mf_acquisition(models, lambda, costs, best, cfg.beta, cfg.mf_epsilon, m, x);
      };
      Point x = refine_from_sweep(score, candidates, scores, search);
      const double value = score(x);
      if (m == 0 || value > chosen.score) chosen = {m, std::move(x), value};
    }

    const Point x = problem.domain.from_unit(chosen.x);
    const double y = problem.sources[chosen.source](x);
    data[chosen.source].append(std::move(chosen.x), y);
    log(it, chosen.source, x, y);
    ++total_queries;
    if (chosen.source == 0) ++ground_truth_queries;
  }

  // A run stopped by the total cap keeps its last best for the rest of N.
  while (record.best_seen_curve.size() < N) record.best_seen_curve.push_back(best);
  detail::finish_record(record, y0, problem.optimum_value);
  record.wall_seconds = detail::seconds_since(start);
  return record;
}

}  // namespace w2bgp
