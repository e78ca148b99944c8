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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "w2bgp/matrix.hpp"

namespace w2bgp {

using Point = std::vector<double>;

enum class KernelKind { kExponential, kSquaredExponential, kMatern32, kMatern52 };

inline constexpr KernelKind kAllKernelKinds[] = {
    KernelKind::kExponential, KernelKind::kSquaredExponential, KernelKind::kMatern32,
    KernelKind::kMatern52};

// Config names: "exponential", "squaredexponential", "matern32", "matern52".
std::string_view kernel_kind_name(KernelKind kind);
std::optional<KernelKind> parse_kernel_kind(std::string_view name);

// Isotropic stationary kernel. Inputs are points in the unit cube.
struct KernelSpec {
  KernelKind kind = KernelKind::kSquaredExponential;
  double lengthscale = 1.0;
  double amplitude = 1.0;
};

inline constexpr double kMinLengthscale = 1e-3;
inline constexpr double kMaxLengthscale = 1e3;
inline constexpr double kMinAmplitude = 1e-6;
inline constexpr double kMaxAmplitude = 1e6;

// Clamps lengthscale and amplitude into the fitting box.
KernelSpec clamp_to_box(KernelSpec spec);

// Covariance as a function of the squared Euclidean distance.
double kernel_from_squared_distance(const KernelSpec& spec, double r2);

double eval_kernel(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> xp);

// Gram matrix plus noise on the diagonal, with the jitter that made it
// factorizable. Throws NotPositiveDefinite once jitter is exhausted.
struct KernelSystem {
  SpdMatrix matrix;
  CholeskyFactor chol;
};

KernelSystem factor_kernel_matrix(const KernelSpec& spec, std::span<const Point> xs,
                                  double noise_variance);

SpdMatrix kernel_matrix(const KernelSpec& spec, std::span<const Point> xs,
                        double noise_variance);

// Pairwise squared distances, reused across hyperparameter candidates.
Matrix pairwise_squared_distances(std::span<const Point> xs);

KernelSystem factor_kernel_matrix_from_distances(const KernelSpec& spec,
                                                 const Matrix& squared_distances,
                                                 double noise_variance);

}  // namespace w2bgp
