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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "w2bgp/acquisition.hpp"
#include "w2bgp/benchmarks.hpp"
#include "w2bgp/gp.hpp"
#include "w2bgp/run_record.hpp"
#include "w2bgp/wasserstein.hpp"

namespace w2bgp {

enum class Schema { kSelfConfident, kEqual, kUncooperative, kFidelity, kRescaled };

// Config names: "self-confident", "equal", "uncooperative", "fidelity", "rescaled".
std::string_view schema_name(Schema schema);
std::optional<Schema> parse_schema(std::string_view name);

// Indices are zero-based. Throws InvalidIndex; M = 1 is rejected.
WeightVector weights_self_confident(std::size_t M, std::size_t m);
WeightVector weights_equal(std::size_t M);
// Throws InvalidIndex.
WeightVector weights_uncooperative(std::size_t M, std::size_t m);
// Fidelities normalized to sum to one. Throws NonPositiveFidelity.
WeightVector weights_fidelity(std::span<const double> fidelities);
// 0.75·0.25^m for m = 0..M-1, normalized.
WeightVector weights_rescaled(std::size_t M);

// λ used by agent (or proposer) m under a federated/batch schema. With a
// single agent every schema is the trivial simplex (1).
WeightVector schema_weights(Schema schema, std::size_t M, std::size_t m);

struct TaskConfig {
  Schema schema = Schema::kEqual;
  std::vector<KernelKind> kernels{std::begin(kAllKernelKinds), std::end(kAllKernelKinds)};
  double beta = kDefaultBeta;
  std::uint64_t seed = 0;
  std::size_t n0 = 0;      // 0: default_initial_size(d)
  std::size_t budget = 0;  // N; 0: default_budget(d)
  double batch_dedup_tol = 1e-3;
  std::vector<double> costs;  // MFBO; empty: the problem's costs
  double mf_epsilon = kDefaultMfEpsilon;
  double noise_variance = kDefaultNoiseVariance;
  std::size_t acquisition_budget = 0;  // 0: default_acquisition_budget(d)
};

std::size_t resolved_n0(const TaskConfig& cfg, std::size_t d);
std::size_t resolved_budget(const TaskConfig& cfg, std::size_t d);

// Initial design in unit coordinates. Depends only on the seed and sizes, so
// every schema of a replicate starts from the same points.
std::vector<Point> initial_design(const TaskConfig& cfg, std::size_t d);

// Seed of the acquisition sweep at a given iteration (1-based).
std::uint64_t acquisition_seed(const TaskConfig& cfg, std::size_t iteration);

// The only capability an agent exposes across the federation boundary:
// de-standardized posterior predictions.
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual Gaussian1D predict(std::span<const double> x) const = 0;
  virtual void predict_batch(std::span<const Point> xs, std::span<Gaussian1D> out) const = 0;
};

// Adapts a fitted GP to the Predictor interface.
class ModelPredictor final : public Predictor {
 public:
  explicit ModelPredictor(const GpModel& model) : model_(&model) {}
  Gaussian1D predict(std::span<const double> x) const override { return model_->predict(x); }
  void predict_batch(std::span<const Point> xs, std::span<Gaussian1D> out) const override;

 private:
  const GpModel* model_;
};

// A federated agent: private observations plus a GP refitted on demand.
class Agent final : public Predictor {
 public:
  Agent(KernelKind kernel, double noise_variance) : kernel_(kernel), noise_(noise_variance) {}

  void observe(Point unit_x, double y);
  // Maximum-likelihood refit on the agent's own data.
  void refit();

  Gaussian1D predict(std::span<const double> x) const override;
  void predict_batch(std::span<const Point> xs, std::span<Gaussian1D> out) const override;

  std::size_t observation_count() const noexcept { return data_.size(); }

 private:
  KernelKind kernel_;
  double noise_;
  Dataset data_;
  std::optional<GpModel> model_;
};

// Scores the sweep once per agent, then answers queries for any λ by
// combining the cached predictions. Sees predictions only.
class Coordinator {
 public:
  Coordinator(std::vector<const Predictor*> agents, double beta, AcquisitionSearch search);

  // arg min over the unit cube of LCB of the λ-weighted barycenter.
  Point propose(const WeightVector& lambda) const;

  std::size_t agent_count() const noexcept { return agents_.size(); }

 private:
  Gaussian1D barycenter_at(const WeightVector& lambda, std::span<const double> x) const;

  std::vector<const Predictor*> agents_;
  double beta_;
  AcquisitionSearch search_;
  std::vector<Point> candidates_;
  std::vector<std::vector<double>> means_;  // per agent, per candidate
  std::vector<std::vector<double>> sds_;
};

struct FederatedResult {
  std::vector<RunRecord> agents;
  // All agents' observations pooled; the gap curve is indexed by the
  // per-agent query count and starts with the shared initial design.
  RunRecord system;
};

// Throws InvalidArgument for schemas other than self-confident, equal and
// uncooperative.
FederatedResult run_federated(const TestProblem& problem, const TaskConfig& cfg);

// Single-GP BO with the LCB acquisition; the reference for the
// uncooperative federated trace.
RunRecord run_vanilla(const TestProblem& problem, KernelKind kernel, const TaskConfig& cfg);

// Shared-data batch BO, one proposal per kernel, near-duplicates dropped.
RunRecord run_batch(const TestProblem& problem, const TaskConfig& cfg);

// Location-source pairs chosen by the multi-fidelity acquisition. Only
// ground-truth queries count against N; total queries are capped at 10·N.
RunRecord run_mfbo(const MultiFidelityProblem& problem, const TaskConfig& cfg);

}  // namespace w2bgp
