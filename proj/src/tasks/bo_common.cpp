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

#include "bo_common.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "w2bgp/error.hpp"
#include "w2bgp/random.hpp"
#include "w2bgp/simd/vecops.hpp"

namespace w2bgp {
namespace {

constexpr std::uint64_t kDesignTag = 0xde5;
constexpr std::uint64_t kAcquisitionTag = 0xac9;

}  // namespace

std::size_t resolved_n0(const TaskConfig& cfg, std::size_t d) {
  return cfg.n0 != 0 ? cfg.n0 : default_initial_size(d);
}

std::size_t resolved_budget(const TaskConfig& cfg, std::size_t d) {
  const std::size_t n = cfg.budget != 0 ? cfg.budget : default_budget(d);
  if (n < resolved_n0(cfg, d)) {
    throw Error(ErrorKind::kInvalidArgument, "budget " + std::to_string(n) +
                                                 " is smaller than the initial design");
  }
  return n;
}

std::vector<Point> initial_design(const TaskConfig& cfg, std::size_t d) {
  return lhs_sample(resolved_n0(cfg, d), d, derive_seed(cfg.seed, {kDesignTag}));
}

std::uint64_t acquisition_seed(const TaskConfig& cfg, std::size_t iteration) {
  return derive_seed(cfg.seed, {kAcquisitionTag, iteration});
}

void ModelPredictor::predict_batch(std::span<const Point> xs, std::span<Gaussian1D> out) const {
  model_->posterior_batch(xs, out);
  for (Gaussian1D& g : out) g = model_->de_standardize(g);
}

void Agent::observe(Point unit_x, double y) {
  if (data_.empty()) {
    data_ = Dataset::from_raw({std::move(unit_x)}, {y});
  } else {
    data_.append(std::move(unit_x), y);
  }
}

void Agent::refit() { model_.emplace(fit_gp(data_, kernel_, noise_)); }

Gaussian1D Agent::predict(std::span<const double> x) const {
  if (!model_) throw Error(ErrorKind::kEmptyDataset, "agent has no fitted model");
  return model_->predict(x);
}

void Agent::predict_batch(std::span<const Point> xs, std::span<Gaussian1D> out) const {
  if (!model_) throw Error(ErrorKind::kEmptyDataset, "agent has no fitted model");
  ModelPredictor(*model_).predict_batch(xs, out);
}

Coordinator::Coordinator(std::vector<const Predictor*> agents, double beta,
                         AcquisitionSearch search)
    : agents_(std::move(agents)), beta_(beta), search_(search) {
  if (agents_.empty()) throw Error(ErrorKind::kInvalidArgument, "no agents");
  candidates_ = sweep_candidates(search_.dim, sweep_size_for(search_.budget), search_.seed);
  std::vector<Gaussian1D> preds(candidates_.size());
  means_.resize(agents_.size());
  sds_.resize(agents_.size());
  for (std::size_t a = 0; a < agents_.size(); ++a) {
    agents_[a]->predict_batch(candidates_, preds);
    means_[a].resize(preds.size());
    sds_[a].resize(preds.size());
    for (std::size_t i = 0; i < preds.size(); ++i) {
      means_[a][i] = preds[i].mean;
      sds_[a][i] = preds[i].sd;
    }
  }
}

// Same accumulation order as barycenter_gaussian1d: from 0.0, index order.
Gaussian1D Coordinator::barycenter_at(const WeightVector& lambda,
                                      std::span<const double> x) const {
  Gaussian1D bary{0.0, 0.0};
  for (std::size_t a = 0; a < agents_.size(); ++a) {
    const Gaussian1D g = agents_[a]->predict(x);
    bary.mean += lambda[a] * g.mean;
    bary.sd += lambda[a] * g.sd;
  }
  return bary;
}

Point Coordinator::propose(const WeightVector& lambda) const {
  if (lambda.size() != agents_.size()) {
    throw Error(ErrorKind::kLengthMismatch, "one weight per agent required");
  }
  const std::size_t n = candidates_.size();
  std::vector<double> mean(n, 0.0);
  std::vector<double> sd(n, 0.0);
  for (std::size_t a = 0; a < agents_.size(); ++a) {
    simd::axpy(lambda[a], means_[a], mean);
    simd::axpy(lambda[a], sds_[a], sd);
  }
  std::vector<double> scores(n);
  simd::lcb(mean, sd, beta_, scores);
  const PointScore score = [&](std::span<const double> x) {
    return lcb(barycenter_at(lambda, x), beta_);
  };
  return refine_from_sweep(score, candidates_, scores, search_);
}

namespace detail {

AcquisitionSearch lcb_search(const TaskConfig& cfg, std::size_t d, std::size_t iteration) {
  AcquisitionSearch search;
  search.dim = d;
  search.mode = SearchMode::kMinimize;
  search.budget =
      cfg.acquisition_budget != 0 ? cfg.acquisition_budget : default_acquisition_budget(d);
  search.seed = acquisition_seed(cfg, iteration);
  return search;
}

void finish_record(RunRecord& record, double y0, double ystar) {
  GapCurve curve;
  try {
    curve = gap_curve(record.best_seen_curve, y0, ystar);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDegenerateStart) throw;
    curve = all_ones_curve(record.best_seen_curve.size(), y0, ystar);
  }
  record.gap = std::move(curve.values);
  record.augc = record.gap.empty() ? 0.0 : augc(GapCurve{record.gap, y0, ystar});
}

double min_of(std::span<const double> values) {
  double best = std::numeric_limits<double>::infinity();
  for (double v : values) best = std::min(best, v);
  return best;
}

void log_query(RunRecord& record, std::size_t iteration, std::size_t source, Point x, double y) {
  const double previous = record.entries.empty() ? std::numeric_limits<double>::infinity()
                                                 : record.entries.back().best_seen;
  record.entries.push_back({iteration, source, std::move(x), y, std::min(previous, y)});
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace detail
}  // namespace w2bgp
