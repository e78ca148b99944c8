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

#include <numeric>

#include "support.hpp"
#include "w2bgp/error.hpp"
#include "w2bgp/tasks.hpp"

namespace w2bgp {
namespace {

using testing::Gen;

TaskConfig small_config(Schema schema, std::uint64_t seed, std::size_t budget) {
  TaskConfig cfg;
  cfg.schema = schema;
  cfg.seed = seed;
  cfg.budget = budget;
  return cfg;
}

void expect_same_trace(const RunRecord& a, const RunRecord& b) {
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].x, b.entries[i].x) << "entry " << i;
    EXPECT_EQ(a.entries[i].y, b.entries[i].y) << "entry " << i;
    EXPECT_EQ(a.entries[i].best_seen, b.entries[i].best_seen) << "entry " << i;
    EXPECT_EQ(a.entries[i].source, b.entries[i].source) << "entry " << i;
  }
  EXPECT_EQ(a.gap, b.gap);
  EXPECT_EQ(a.augc, b.augc);
}

TEST(Weights, SchemaValues) {
  const WeightVector sc = weights_self_confident(4, 1);
  EXPECT_EQ(sc[1], 0.5);
  EXPECT_DOUBLE_EQ(sc[0], 1.0 / 6.0);
  EXPECT_EQ(weights_uncooperative(3, 2), WeightVector({0.0, 0.0, 1.0}));
  EXPECT_EQ(weights_equal(2), WeightVector({0.5, 0.5}));
  const WeightVector r = weights_rescaled(2);
  EXPECT_DOUBLE_EQ(r[0], 0.8);
  EXPECT_DOUBLE_EQ(r[1], 0.2);
  const WeightVector f = weights_fidelity(std::vector<double>{1.0, 0.5, 0.5});
  EXPECT_DOUBLE_EQ(f[0], 0.5);
  EXPECT_DOUBLE_EQ(f[2], 0.25);
  EXPECT_EQ(schema_weights(Schema::kSelfConfident, 1, 0), WeightVector({1.0}));
}

TEST(Weights, AlwaysOnSimplex) {
  Gen gen(80);
  for (std::size_t M = 1; M <= 12; ++M) {
    std::vector<double> fid(M);
    for (double& f : fid) f = gen.uniform(1e-3, 1.0);
    std::vector<WeightVector> ws{weights_equal(M), weights_rescaled(M), weights_fidelity(fid)};
    for (std::size_t m = 0; m < M; ++m) {
      ws.push_back(schema_weights(Schema::kUncooperative, M, m));
      ws.push_back(schema_weights(Schema::kSelfConfident, M, m));
    }
    for (const WeightVector& w : ws) {
      const double sum = std::accumulate(w.values().begin(), w.values().end(), 0.0);
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
    // Rescaled weights decay geometrically by a factor four.
    const WeightVector r = weights_rescaled(M);
    for (std::size_t i = 1; i < M; ++i) EXPECT_NEAR(r[i] / r[i - 1], 0.25, 1e-9);
  }
}

TEST(Weights, InvalidArguments) {
  EXPECT_THROW(weights_self_confident(1, 0), Error);
  EXPECT_THROW(weights_uncooperative(3, 3), Error);
  EXPECT_THROW(weights_fidelity(std::vector<double>{1.0, 0.0}), Error);
  EXPECT_THROW(schema_weights(Schema::kFidelity, 3, 0), Error);
  EXPECT_EQ(parse_schema("self-confident"), Schema::kSelfConfident);
  EXPECT_FALSE(parse_schema("selfish").has_value());
}

TEST(BoCommon, DefaultsAndSeeds) {
  TaskConfig cfg;
  EXPECT_EQ(resolved_n0(cfg, 3), 6u);
  EXPECT_EQ(resolved_budget(cfg, 3), 90u);
  cfg.budget = 3;
  EXPECT_THROW(resolved_budget(cfg, 3), Error);
  cfg.seed = 4;
  EXPECT_NE(acquisition_seed(cfg, 1), acquisition_seed(cfg, 2));
  EXPECT_EQ(initial_design(cfg, 2), initial_design(cfg, 2));
  TaskConfig other = cfg;
  other.seed = 5;
  EXPECT_NE(initial_design(cfg, 2), initial_design(other, 2));
}

TEST(Federated, RecordShapeAndPooledBest) {
  const TestProblem p = make_problem("problem_14", 1);
  const TaskConfig cfg = small_config(Schema::kSelfConfident, 3, 12);
  const FederatedResult r = run_federated(p, cfg);
  ASSERT_EQ(r.agents.size(), 4u);
  ASSERT_EQ(r.system.best_seen_curve.size(), 12u);
  ASSERT_EQ(r.system.gap.size(), 12u);
  for (const RunRecord& a : r.agents) ASSERT_EQ(a.entries.size(), 12u);
  for (std::size_t n = 1; n <= 12; ++n) {
    double pooled = std::numeric_limits<double>::infinity();
    for (const RunRecord& a : r.agents) {
      for (std::size_t i = 0; i < n; ++i) pooled = std::min(pooled, a.entries[i].y);
    }
    EXPECT_EQ(r.system.best_seen_curve[n - 1], pooled) << "n=" << n;
  }
  // The shared initial design is identical for every agent.
  for (std::size_t i = 0; i < resolved_n0(cfg, 1); ++i) {
    for (const RunRecord& a : r.agents) EXPECT_EQ(a.entries[i].x, r.agents[0].entries[i].x);
  }
}

TEST(Federated, EqualSchemaQueriesCoincide) {
  const TestProblem p = make_problem("bird", 2);
  const FederatedResult r = run_federated(p, small_config(Schema::kEqual, 8, 10));
  for (std::size_t i = 0; i < r.agents[0].entries.size(); ++i) {
    for (const RunRecord& a : r.agents) EXPECT_EQ(a.entries[i].x, r.agents[0].entries[i].x);
  }
}

TEST(Federated, UncooperativeAgentsMatchVanillaBo) {
  const TestProblem p = make_problem("problem_07", 1);
  const TaskConfig cfg = small_config(Schema::kUncooperative, 5, 12);
  const FederatedResult r = run_federated(p, cfg);
  for (std::size_t m = 0; m < cfg.kernels.size(); ++m) {
    const RunRecord vanilla = run_vanilla(p, cfg.kernels[m], cfg);
    ASSERT_EQ(vanilla.entries.size(), r.agents[m].entries.size());
    for (std::size_t i = 0; i < vanilla.entries.size(); ++i) {
      EXPECT_EQ(vanilla.entries[i].x, r.agents[m].entries[i].x);
      EXPECT_EQ(vanilla.entries[i].y, r.agents[m].entries[i].y);
      EXPECT_EQ(vanilla.entries[i].best_seen, r.agents[m].entries[i].best_seen);
    }
  }
}

TEST(Federated, DeterministicUnderSeed) {
  const TestProblem p = make_problem("problem_05", 1);
  const TaskConfig cfg = small_config(Schema::kSelfConfident, 9, 10);
  expect_same_trace(run_federated(p, cfg).system, run_federated(p, cfg).system);
}

TEST(Federated, RejectsMultiFidelitySchema) {
  EXPECT_THROW(run_federated(make_problem("problem_05", 1), small_config(Schema::kRescaled, 1, 10)),
               Error);
}

TEST(Coordinator, SingleAgentProposalIsVanillaArgmin) {
  Gen gen(81);
  const GpModel model(gen.dataset(5, 1), gen.kernel(), 1e-6);
  const ModelPredictor predictor(model);
  const AcquisitionSearch search{1, SearchMode::kMinimize, default_acquisition_budget(1), 13};
  const Coordinator c({&predictor}, 2.0, search);
  const Point proposed = c.propose(WeightVector({1.0}));
  const Point vanilla = optimize_acquisition(
      [&](std::span<const double> x) { return lcb(model.predict(x), 2.0); }, search);
  EXPECT_EQ(proposed, vanilla);
  EXPECT_THROW(c.propose(WeightVector({0.5, 0.5})), Error);
}

TEST(Batch, EvaluationCountAndBatchSizes) {
  const TestProblem p = make_problem("problem_03", 1);
  for (Schema s : {Schema::kSelfConfident, Schema::kEqual, Schema::kUncooperative}) {
    const TaskConfig cfg = small_config(s, 2, 14);
    const RunRecord r = run_batch(p, cfg);
    const std::size_t n0 = resolved_n0(cfg, 1);
    const std::size_t evaluations = r.entries.size();
    EXPECT_GE(evaluations, 14u);
    EXPECT_LE(evaluations, 14u + cfg.kernels.size() - 1);
    EXPECT_EQ(n0 + std::accumulate(r.batch_sizes.begin(), r.batch_sizes.end(), std::size_t{0}),
              evaluations);
    for (std::size_t q : r.batch_sizes) {
      EXPECT_GE(q, 1u);
      EXPECT_LE(q, cfg.kernels.size());
    }
    EXPECT_EQ(r.gap.size(), 14u);
    if (s == Schema::kEqual) {
      for (std::size_t q : r.batch_sizes) EXPECT_EQ(q, 1u);
    }
  }
}

TEST(Batch, DeduplicatesWithinTolerance) {
  const TestProblem p = make_problem("problem_22", 1);
  TaskConfig cfg = small_config(Schema::kUncooperative, 6, 14);
  const RunRecord r = run_batch(p, cfg);
  std::size_t cursor = resolved_n0(cfg, 1);
  for (std::size_t q : r.batch_sizes) {
    for (std::size_t i = cursor; i < cursor + q; ++i) {
      for (std::size_t j = cursor; j < i; ++j) {
        const Point ui = p.domain.to_unit(r.entries[i].x);
        const Point uj = p.domain.to_unit(r.entries[j].x);
        EXPECT_GE(std::abs(ui[0] - uj[0]), cfg.batch_dedup_tol);
      }
    }
    cursor += q;
  }
}

TEST(Mfbo, AccountingAndDeterminism) {
  const MultiFidelityProblem p = make_mf_problem("forrester", 1);
  TaskConfig cfg = small_config(Schema::kFidelity, 4, 10);
  const RunRecord a = run_mfbo(p, cfg);
  const RunRecord b = run_mfbo(p, cfg);
  expect_same_trace(a, b);
  EXPECT_EQ(a.best_seen_curve.size(), 10u);
  EXPECT_EQ(a.gap.size(), 10u);
  EXPECT_LE(a.entries.size(), 100u);
  std::size_t ground_truth = 0;
  for (const QueryEntry& e : a.entries) {
    EXPECT_LT(e.source, 4u);
    ground_truth += e.source == 0 ? 1 : 0;
  }
  EXPECT_LE(ground_truth, 10u);
  const std::vector<double> usage = usage_fraction(a);
  EXPECT_NEAR(std::accumulate(usage.begin(), usage.end(), 0.0), 100.0, 1e-9);
}

TEST(Mfbo, CostsAndSchemaAreValidated) {
  const MultiFidelityProblem p = make_mf_problem("heterogeneous", 1);
  TaskConfig cfg = small_config(Schema::kRescaled, 1, 6);
  cfg.costs = {1.0};
  EXPECT_THROW(run_mfbo(p, cfg), Error);
  cfg.costs = {1.0, -1.0};
  EXPECT_THROW(run_mfbo(p, cfg), Error);
  cfg.costs.clear();
  cfg.schema = Schema::kSelfConfident;
  EXPECT_THROW(run_mfbo(p, cfg), Error);
}

}  // namespace
}  // namespace w2bgp
