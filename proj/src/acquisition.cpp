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

#include "w2bgp/acquisition.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "w2bgp/error.hpp"
#include "w2bgp/random.hpp"

namespace w2bgp {
namespace {

constexpr std::array<std::uint32_t, 40> kPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173};

double radical_inverse(std::uint64_t index, std::uint32_t base) {
  const double inv_base = 1.0 / base;
  double factor = inv_base;
  double result = 0.0;
  while (index > 0) {
    result += static_cast<double>(index % base) * factor;
    index /= base;
    factor *= inv_base;
  }
  return result;
}

// NaN never wins.
bool better(double candidate, double incumbent, SearchMode mode) {
  if (std::isnan(candidate)) return false;
  if (std::isnan(incumbent)) return true;
  return mode == SearchMode::kMinimize ? candidate < incumbent : candidate > incumbent;
}

}  // namespace

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double lcb(const Gaussian1D& g, double beta) { return g.mean - beta * g.sd; }

double probability_of_improvement(const Gaussian1D& g, double best_seen) {
  if (g.sd <= 0.0) return g.mean < best_seen ? 1.0 : 0.0;
  return normal_cdf((best_seen - g.mean) / g.sd);
}

double expected_improvement(const Gaussian1D& g, double best_seen) {
  if (g.sd <= 0.0) return 0.0;
  const double improvement = best_seen - g.mean;
  const double z = improvement / g.sd;
  return std::max(improvement * normal_cdf(z) + g.sd * normal_pdf(z), 0.0);
}

double mf_score(const Gaussian1D& source, const Gaussian1D& barycenter, double cost,
                double best_seen, double beta, double eps) {
  const double numerator = best_seen - lcb(barycenter, beta);
  const double dm = source.mean - barycenter.mean;
  const double ds = source.sd - barycenter.sd;
  return numerator / (cost * (dm * dm + ds * ds + eps));
}

double mf_acquisition(std::span<const GpModel> models, const WeightVector& lambda,
                      std::span<const double> costs, double best_seen, double beta,
                      double eps, std::size_t m, std::span<const double> x) {
  if (costs.size() != models.size()) {
    throw Error(ErrorKind::kLengthMismatch, "one cost per source required");
  }
  if (m >= models.size()) {
    throw Error(ErrorKind::kInvalidIndex, "source index " + std::to_string(m));
  }
  if (!(costs[m] > 0.0)) throw Error(ErrorKind::kInvalidArgument, "costs must be positive");
  const Gaussian1D bary = w2bgp_posterior(models, lambda, x);
  return mf_score(models[m].predict(x), bary, costs[m], best_seen, beta, eps);
}

std::size_t refine_steps_for(std::size_t budget) {
  const std::size_t affordable = budget == 0 ? 0 : (budget - 1) / 2;
  return std::min(kRefineSteps, affordable);
}

std::size_t sweep_size_for(std::size_t budget) {
  const std::size_t sweep = budget - 2 * refine_steps_for(budget);
  return sweep == 0 ? 1 : sweep;
}

std::vector<Point> sweep_candidates(std::size_t dim, std::size_t count, std::uint64_t seed) {
  if (dim == 0 || dim > kPrimes.size()) {
    throw Error(ErrorKind::kInvalidDimension,
                "sweep supports 1.." + std::to_string(kPrimes.size()) + " dimensions");
  }
  Rng rng(derive_seed(seed, {0x5eed}));
  std::vector<double> shift(dim);
  for (double& s : shift) s = rng.uniform();
  std::vector<Point> points(count, Point(dim));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      double v = radical_inverse(i + 1, kPrimes[k]) + shift[k];
      if (v >= 1.0) v -= 1.0;
      points[i][k] = v;
    }
  }
  return points;
}

Point refine_from_sweep(const PointScore& score, std::span<const Point> candidates,
                        std::span<const double> scores, const AcquisitionSearch& search) {
  if (candidates.empty() || candidates.size() != scores.size()) {
    throw Error(ErrorKind::kLengthMismatch, "candidate scores do not match candidates");
  }
  std::size_t best_index = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (better(scores[i], scores[best_index], search.mode)) best_index = i;
  }
  Point best = candidates[best_index];
  double best_score = scores[best_index];

  const std::size_t steps = refine_steps_for(search.budget);
  const std::size_t dim = search.dim;
  double step = 1.0 / std::pow(static_cast<double>(candidates.size()), 1.0 / dim);
  std::size_t since_improvement = 0;
  Point trial;
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t k = s % dim;
    bool improved = false;
    for (double direction : {1.0, -1.0}) {
      trial = best;
      trial[k] = std::clamp(best[k] + direction * step, 0.0, 1.0);
      const double value = score(trial);
      if (better(value, best_score, search.mode)) {
        best_score = value;
        best = trial;
        improved = true;
        break;
      }
    }
    since_improvement = improved ? 0 : since_improvement + 1;
    if (since_improvement >= dim) {
      step *= 0.5;
      since_improvement = 0;
    }
  }
  return best;
}

Point optimize_acquisition(const PointScore& score, const AcquisitionSearch& search) {
  if (search.budget == 0) throw Error(ErrorKind::kInvalidArgument, "budget must be >= 1");
  const std::vector<Point> candidates =
      sweep_candidates(search.dim, sweep_size_for(search.budget), search.seed);
  std::vector<double> scores(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) scores[i] = score(candidates[i]);
  return refine_from_sweep(score, candidates, scores, search);
}

}  // namespace w2bgp
