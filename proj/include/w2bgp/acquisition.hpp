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
#include <functional>
#include <span>
#include <vector>

#include "w2bgp/gaussian.hpp"
#include "w2bgp/gp.hpp"
#include "w2bgp/wasserstein.hpp"

namespace w2bgp {

inline constexpr double kDefaultBeta = 2.0;
inline constexpr double kDefaultMfEpsilon = 1e-9;

struct AcquisitionConfig {
  double beta = kDefaultBeta;
  double best_seen = 0.0;  // y⁺ in original output units
  double epsilon_denominator = kDefaultMfEpsilon;
};

double normal_pdf(double z);
double normal_cdf(double z);

// g.mean − beta·g.sd
double lcb(const Gaussian1D& g, double beta);

// Φ((y⁺ − μ)/σ); for σ = 0 returns 1 when μ < y⁺ and 0 otherwise.
double probability_of_improvement(const Gaussian1D& g, double best_seen);

// (y⁺ − μ)Φ(z) + σφ(z) with z = (y⁺ − μ)/σ; exactly 0 when σ = 0.
double expected_improvement(const Gaussian1D& g, double best_seen);

// Optimistic improvement over cost-weighted W2² discrepancy between one
// source's posterior and the barycenter:
//   (y⁺ − (μ̄ − βσ̄)) / (c_m·((μ_m − μ̄)² + (σ_m − σ̄)² + ε))
double mf_score(const Gaussian1D& source, const Gaussian1D& barycenter, double cost,
                double best_seen, double beta, double eps);

// mf_score of source `m` (zero-based) against the W2BGP of all models at x.
double mf_acquisition(std::span<const GpModel> models, const WeightVector& lambda,
                      std::span<const double> costs, double best_seen, double beta,
                      double eps, std::size_t m, std::span<const double> x);

enum class SearchMode { kMinimize, kMaximize };

using PointScore = std::function<double(std::span<const double>)>;

// Inner optimizer settings over the unit cube [0, 1]^dim.
struct AcquisitionSearch {
  std::size_t dim = 1;
  SearchMode mode = SearchMode::kMinimize;
  std::size_t budget = 1;  // total score evaluations
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kSweepPointsPerDim = 1024;
inline constexpr std::size_t kRefineSteps = 100;

inline std::size_t default_acquisition_budget(std::size_t dim) {
  return kSweepPointsPerDim * dim + 2 * kRefineSteps;
}

// Number of coordinate steps and sweep candidates a budget affords: each
// refinement step spends two evaluations, the rest goes to the sweep.
std::size_t refine_steps_for(std::size_t budget);
std::size_t sweep_size_for(std::size_t budget);

// Randomly shifted Halton points in [0, 1)^dim, deterministic per seed.
std::vector<Point> sweep_candidates(std::size_t dim, std::size_t count, std::uint64_t seed);

// Candidate sweep followed by coordinate-wise pattern search from the best
// candidate. Deterministic for a fixed seed; ties go to the earliest point.
Point optimize_acquisition(const PointScore& score, const AcquisitionSearch& search);

// Second half of optimize_acquisition for callers that scored the sweep
// themselves. `candidates` must be sweep_candidates(search.dim,
// sweep_size_for(search.budget), search.seed) and `scores` their values.
Point refine_from_sweep(const PointScore& score, std::span<const Point> candidates,
                        std::span<const double> scores, const AcquisitionSearch& search);

}  // namespace w2bgp
