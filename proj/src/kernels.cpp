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

#include "w2bgp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "w2bgp/error.hpp"
#include "w2bgp/simd/vecops.hpp"

namespace w2bgp {

std::string_view kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::kExponential: return "exponential";
    case KernelKind::kSquaredExponential: return "squaredexponential";
    case KernelKind::kMatern32: return "matern32";
    case KernelKind::kMatern52: return "matern52";
  }
  return "unknown";
}

std::optional<KernelKind> parse_kernel_kind(std::string_view name) {
  for (KernelKind kind : kAllKernelKinds) {
    if (kernel_kind_name(kind) == name) return kind;
  }
  return std::nullopt;
}

KernelSpec clamp_to_box(KernelSpec spec) {
  spec.lengthscale = std::clamp(spec.lengthscale, kMinLengthscale, kMaxLengthscale);
  spec.amplitude = std::clamp(spec.amplitude, kMinAmplitude, kMaxAmplitude);
  return spec;
}

double kernel_from_squared_distance(const KernelSpec& spec, double r2) {
  const double a = spec.amplitude;
  const double l = spec.lengthscale;
  switch (spec.kind) {
    case KernelKind::kExponential:
      return a * std::exp(-std::sqrt(r2) / l);
    case KernelKind::kSquaredExponential:
      return a * std::exp(-r2 / (2.0 * l * l));
    case KernelKind::kMatern32: {
      const double s = std::sqrt(3.0 * r2) / l;
      return a * (1.0 + s) * std::exp(-s);
    }
    case KernelKind::kMatern52: {
      const double s = std::sqrt(5.0 * r2) / l;
      return a * (1.0 + s + s * s / 3.0) * std::exp(-s);
    }
  }
  return 0.0;
}

double eval_kernel(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> xp) {
  if (x.size() != xp.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "kernel inputs of dimension " + std::to_string(x.size()) + " and " +
                    std::to_string(xp.size()));
  }
  return kernel_from_squared_distance(spec, simd::squared_distance(x, xp));
}

Matrix pairwise_squared_distances(std::span<const Point> xs) {
  const std::size_t n = xs.size();
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (xs[i].size() != xs[j].size()) {
        throw Error(ErrorKind::kDimensionMismatch, "points of differing dimension");
      }
      const double r2 = simd::squared_distance(xs[i], xs[j]);
      d(i, j) = r2;
      d(j, i) = r2;
    }
  }
  return d;
}

KernelSystem factor_kernel_matrix_from_distances(const KernelSpec& spec,
                                                 const Matrix& squared_distances,
                                                 double noise_variance) {
  const std::size_t n = squared_distances.rows();
  SpdMatrix k(n, n);
  const double diagonal = kernel_from_squared_distance(spec, 0.0) + noise_variance;
  for (std::size_t i = 0; i < n; ++i) {
    k(i, i) = diagonal;
    for (std::size_t j = 0; j < i; ++j) {
      const double v = kernel_from_squared_distance(spec, squared_distances(i, j));
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  KernelSystem system;
  system.chol = cholesky_with_jitter(k, &system.matrix);
  return system;
}

KernelSystem factor_kernel_matrix(const KernelSpec& spec, std::span<const Point> xs,
                                  double noise_variance) {
  return factor_kernel_matrix_from_distances(spec, pairwise_squared_distances(xs),
                                             noise_variance);
}

SpdMatrix kernel_matrix(const KernelSpec& spec, std::span<const Point> xs,
                        double noise_variance) {
  return factor_kernel_matrix(spec, xs, noise_variance).matrix;
}

}  // namespace w2bgp
