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

#include <span>
#include <vector>

#include "w2bgp/gaussian.hpp"
#include "w2bgp/gp.hpp"
#include "w2bgp/matrix.hpp"

namespace w2bgp {

inline constexpr double kSimplexTolerance = 1e-12;

// Barycenter weights: non-negative, summing to one.
class WeightVector {
 public:
  // Throws InvalidWeights if any entry is negative or non-finite, or the sum
  // is off by more than 1e-12.
  explicit WeightVector(std::vector<double> weights);

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> values() const noexcept { return weights_; }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<double> weights_;
};

// Closed-form W2 between univariate normals: sqrt((μ₁−μ₂)² + (σ₁−σ₂)²).
double w2_gaussian1d(const Gaussian1D& a, const Gaussian1D& b);

// Bures distance sqrt(Tr(Σ₁ + Σ₂ − 2(Σ₁^½ Σ₂ Σ₁^½)^½)); the trace is clamped
// at zero against round-off. Throws DimensionMismatch.
double bures(const SpdMatrix& s1, const SpdMatrix& s2);

// mean = Σ λ_m μ_m, sd = Σ λ_m σ_m. Throws LengthMismatch.
Gaussian1D barycenter_gaussian1d(std::span<const Gaussian1D> gs, const WeightVector& lambda);

struct CovarianceBarycenter {
  SpdMatrix sigma;
  int iterations = 0;
};

inline constexpr double kFixedPointTolerance = 1e-8;
inline constexpr int kFixedPointMaxIterations = 200;

// Fixed-point iteration for the barycenter of centred Gaussians, started
// from the weighted arithmetic mean:
//   Σ ← Σ^-½ (Σ_m λ_m (Σ^½ Σ_m Σ^½)^½)² Σ^-½
// until the relative Frobenius change drops below `tolerance`. Throws
// NoConvergence after `max_iterations`.
CovarianceBarycenter barycenter_cov_fixed_point(std::span<const SpdMatrix> sigmas,
                                                const WeightVector& lambda,
                                                double tolerance = kFixedPointTolerance,
                                                int max_iterations = kFixedPointMaxIterations);

// W2 between two GP posteriors restricted to a finite grid, in original
// output units. Validation only: cost is cubic in the grid size.
double w2_gp_grid(const GpModel& m1, const GpModel& m2, std::span<const Point> grid);

// Pointwise barycenter of the models' de-standardized posteriors at x.
Gaussian1D w2bgp_posterior(std::span<const GpModel> models, const WeightVector& lambda,
                           std::span<const double> x);

}  // namespace w2bgp
