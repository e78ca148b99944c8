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
#include "w2bgp/kernels.hpp"
#include "w2bgp/matrix.hpp"

namespace w2bgp {

// Affine map between original and standardized output units:
// raw = shift + scale * standardized.
struct Standardization {
  double shift = 0.0;
  double scale = 1.0;

  double standardize(double raw) const { return (raw - shift) / scale; }
  double de_standardize(double value) const { return shift + scale * value; }
};

// Training data: inputs in unit-cube coordinates, outputs both raw and
// standardized to zero mean and unit variance over the set.
class Dataset {
 public:
  Dataset() = default;

  // Throws EmptyDataset, LengthMismatch, DimensionMismatch, or
  // InvalidArgument (non-finite entries).
  static Dataset from_raw(std::vector<Point> points, std::vector<double> raw_values);

  void append(Point x, double raw_value);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  std::size_t dim() const noexcept { return points_.empty() ? 0 : points_.front().size(); }

  const std::vector<Point>& points() const noexcept { return points_; }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<double>& raw_values() const noexcept { return raw_values_; }
  const Standardization& standardization() const noexcept { return standardization_; }

 private:
  void restandardize();

  std::vector<Point> points_;
  std::vector<double> values_;
  std::vector<double> raw_values_;
  Standardization standardization_;
};

// Noise used for the deterministic benchmark problems (standardized units).
inline constexpr double kDefaultNoiseVariance = 1e-6;

// GP posterior with zero prior mean in standardized space. Immutable after
// construction; concurrent queries are safe.
class GpModel {
 public:
  // Conditions on `data` with fixed hyperparameters (no fitting).
  GpModel(Dataset data, KernelSpec kernel, double noise_variance);

  const KernelSpec& kernel() const noexcept { return kernel_; }
  double noise_variance() const noexcept { return noise_variance_; }
  const Dataset& data() const noexcept { return data_; }
  const CholeskyFactor& chol() const noexcept { return system_.chol; }
  const SpdMatrix& gram() const noexcept { return system_.matrix; }
  const std::vector<double>& alpha() const noexcept { return alpha_; }
  std::size_t dim() const noexcept { return data_.dim(); }

  // Posterior in standardized output units. Throws DimensionMismatch.
  Gaussian1D posterior(std::span<const double> x) const;

  // Same arithmetic as posterior(), applied to each point.
  void posterior_batch(std::span<const Point> xs, std::span<Gaussian1D> out) const;

  // Joint posterior covariance on `grid` (standardized units).
  SpdMatrix posterior_covariance(std::span<const Point> grid) const;

  Gaussian1D de_standardize(const Gaussian1D& g) const;

  // Posterior in original output units.
  Gaussian1D predict(std::span<const double> x) const { return de_standardize(posterior(x)); }

  double log_marginal_likelihood() const;

 private:
  Dataset data_;
  KernelSpec kernel_;
  double noise_variance_;
  KernelSystem system_;
  std::vector<double> alpha_;
};

// Hyperparameters visited by fit_gp, for inspection in tests.
struct FitTrace {
  KernelSpec initial;
  double initial_lml = 0.0;
  std::vector<double> lengthscale_grid;
  std::vector<double> amplitude_grid;
  std::vector<double> grid_lml;  // row-major over (lengthscale, amplitude)
  double best_lml = 0.0;
};

inline constexpr int kMleGridSize = 12;
inline constexpr int kMleRefineIterations = 50;

// Maximum-likelihood fit of (lengthscale, amplitude) over the clamped box: a
// 12x12 log-spaced grid, then golden-section refinement one coordinate at a
// time around the best grid point. Throws EmptyDataset.
GpModel fit_gp(const Dataset& data, KernelKind kind, double noise_variance,
               FitTrace* trace = nullptr);

inline double log_marginal_likelihood(const GpModel& model) {
  return model.log_marginal_likelihood();
}

inline Gaussian1D de_standardize(const GpModel& model, const Gaussian1D& g) {
  return model.de_standardize(g);
}

}  // namespace w2bgp
