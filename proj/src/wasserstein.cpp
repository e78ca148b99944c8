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

#include "w2bgp/wasserstein.hpp"

#include <cmath>
#include <string>

#include "w2bgp/error.hpp"

namespace w2bgp {

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorKind::kInvalidWeights, "empty weight vector");
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorKind::kInvalidWeights, "weight " + std::to_string(w));
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw Error(ErrorKind::kInvalidWeights, "weights sum to " + std::to_string(sum));
  }
}

double w2_gaussian1d(const Gaussian1D& a, const Gaussian1D& b) {
  return std::hypot(a.mean - b.mean, a.sd - b.sd);
}

double bures(const SpdMatrix& s1, const SpdMatrix& s2) {
  if (!s1.square() || !s2.square() || s1.rows() != s2.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "Bures metric needs equal square matrices");
  }
  const SpdMatrix root1 = spd_sqrt(s1);
  const SpdMatrix cross = spd_sqrt(symmetrize(multiply(multiply(root1, s2), root1)));
  const double value = trace(s1) + trace(s2) - 2.0 * trace(cross);
  return std::sqrt(std::max(value, 0.0));
}

Gaussian1D barycenter_gaussian1d(std::span<const Gaussian1D> gs, const WeightVector& lambda) {
  if (gs.size() != lambda.size()) {
    throw Error(ErrorKind::kLengthMismatch, std::to_string(gs.size()) + " distributions, " +
                                                std::to_string(lambda.size()) + " weights");
  }
  Gaussian1D out{0.0, 0.0};
  for (std::size_t m = 0; m < gs.size(); ++m) {
    out.mean += lambda[m] * gs[m].mean;
    out.sd += lambda[m] * gs[m].sd;
  }
  return out;
}

CovarianceBarycenter barycenter_cov_fixed_point(std::span<const SpdMatrix> sigmas,
                                                const WeightVector& lambda, double tolerance,
                                                int max_iterations) {
  if (sigmas.size() != lambda.size()) {
    throw Error(ErrorKind::kLengthMismatch, "one weight per covariance required");
  }
  if (!(tolerance > 0.0)) throw Error(ErrorKind::kInvalidArgument, "tolerance must be positive");
  const std::size_t n = sigmas.front().rows();
  for (const SpdMatrix& s : sigmas) {
    if (!s.square() || s.rows() != n) {
      throw Error(ErrorKind::kDimensionMismatch, "covariances of differing size");
    }
  }

  SpdMatrix sigma(n, n);
  for (std::size_t m = 0; m < sigmas.size(); ++m) sigma = add(sigma, scale(sigmas[m], lambda[m]));

  for (int it = 1; it <= max_iterations; ++it) {
    const SpdMatrix root = spd_sqrt(sigma);
    const SpdMatrix inv_root = spd_inverse_sqrt(sigma);
    SpdMatrix inner(n, n);
    for (std::size_t m = 0; m < sigmas.size(); ++m) {
      if (lambda[m] == 0.0) continue;
      const SpdMatrix conj = symmetrize(multiply(multiply(root, sigmas[m]), root));
      inner = add(inner, scale(spd_sqrt(conj), lambda[m]));
    }
    SpdMatrix next = symmetrize(multiply(multiply(inv_root, multiply(inner, inner)), inv_root));
    const double change = frobenius_norm(subtract(next, sigma)) / frobenius_norm(sigma);
    sigma = std::move(next);
    if (change < tolerance) return {std::move(sigma), it};
  }
  throw Error(ErrorKind::kNoConvergence,
              "fixed point not reached in " + std::to_string(max_iterations) + " iterations");
}

double w2_gp_grid(const GpModel& m1, const GpModel& m2, std::span<const Point> grid) {
  if (grid.empty()) throw Error(ErrorKind::kInvalidArgument, "empty grid");
  if (m1.dim() != m2.dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "models have different input dimension");
  }
  double mean_sq = 0.0;
  for (const Point& x : grid) {
    const double diff = m1.predict(x).mean - m2.predict(x).mean;
    mean_sq += diff * diff;
  }
  const double s1 = m1.data().standardization().scale;
  const double s2 = m2.data().standardization().scale;
  const SpdMatrix k1 = scale(m1.posterior_covariance(grid), s1 * s1);
  const SpdMatrix k2 = scale(m2.posterior_covariance(grid), s2 * s2);
  const double b = bures(k1, k2);
  return std::sqrt(mean_sq + b * b);
}

Gaussian1D w2bgp_posterior(std::span<const GpModel> models, const WeightVector& lambda,
                           std::span<const double> x) {
  if (models.size() != lambda.size()) {
    throw Error(ErrorKind::kLengthMismatch, "one weight per model required");
  }
  std::vector<Gaussian1D> gs;
  gs.reserve(models.size());
  for (const GpModel& m : models) gs.push_back(m.predict(x));
  return barycenter_gaussian1d(gs, lambda);
}

}  // namespace w2bgp
