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

#include "w2bgp/gp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "w2bgp/error.hpp"
#include "w2bgp/simd/vecops.hpp"

namespace w2bgp {
namespace {

constexpr double kInitialLengthscale = 0.5;
constexpr double kInitialAmplitude = 1.0;

void check_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::kInvalidArgument, std::string("non-finite ") + what);
    }
  }
}

// Shared by posterior() and posterior_batch() so both round identically.
Gaussian1D posterior_with_scratch(const GpModel& model, std::span<const double> x,
                                  std::vector<double>& k, std::vector<double>& v) {
  const auto& points = model.data().points();
  const std::size_t n = points.size();
  if (x.size() != model.dim()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "query of dimension " + std::to_string(x.size()) + ", model has " +
                    std::to_string(model.dim()));
  }
  k.resize(n);
  v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = kernel_from_squared_distance(model.kernel(), simd::squared_distance(x, points[i]));
  }
  const double mean = simd::dot(k, model.alpha());
  const Matrix& l = model.chol().lower;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = k[i] - simd::dot(l.row(i).first(i), std::span<const double>(v).first(i));
    v[i] = s / l(i, i);
  }
  const double prior = kernel_from_squared_distance(model.kernel(), 0.0);
  const double variance = std::max(prior - simd::dot(v, v), 0.0);
  return {mean, std::sqrt(variance)};
}

double lml_from_system(const KernelSystem& system, std::span<const double> y,
                       std::vector<double>* alpha_out) {
  std::vector<double> alpha = chol_solve(system.chol, y);
  const std::size_t n = y.size();
  double log_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) log_diag += std::log(system.chol.lower(i, i));
  const double value = -0.5 * simd::dot(y, alpha) - log_diag -
                       0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  if (alpha_out != nullptr) *alpha_out = std::move(alpha);
  return value;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> grid(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < count; ++i) {
    grid[i] = std::exp(a + (b - a) * static_cast<double>(i) / (count - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace

Dataset Dataset::from_raw(std::vector<Point> points, std::vector<double> raw_values) {
  if (points.empty()) throw Error(ErrorKind::kEmptyDataset, "no observations");
  if (points.size() != raw_values.size()) {
    throw Error(ErrorKind::kLengthMismatch, std::to_string(points.size()) + " points, " +
                                                std::to_string(raw_values.size()) +
                                                " values");
  }
  const std::size_t d = points.front().size();
  for (const Point& p : points) {
    if (p.size() != d) throw Error(ErrorKind::kDimensionMismatch, "ragged points");
    check_finite(p, "input");
  }
  check_finite(raw_values, "output");
  Dataset data;
  data.points_ = std::move(points);
  data.raw_values_ = std::move(raw_values);
  data.restandardize();
  return data;
}

void Dataset::append(Point x, double raw_value) {
  if (!points_.empty() && x.size() != dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "appended point has wrong dimension");
  }
  check_finite(x, "input");
  check_finite(std::span<const double>(&raw_value, 1), "output");
  points_.push_back(std::move(x));
  raw_values_.push_back(raw_value);
  restandardize();
}

void Dataset::restandardize() {
  const double n = static_cast<double>(raw_values_.size());
  double mean = 0.0;
  for (double v : raw_values_) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : raw_values_) ss += (v - mean) * (v - mean);
  double sd = std::sqrt(ss / n);
  if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) sd = 1.0;
  standardization_ = {mean, sd};
  values_.resize(raw_values_.size());
  for (std::size_t i = 0; i < raw_values_.size(); ++i) {
    values_[i] = standardization_.standardize(raw_values_[i]);
  }
}

GpModel::GpModel(Dataset data, KernelSpec kernel, double noise_variance)
    : data_(std::move(data)), kernel_(kernel), noise_variance_(noise_variance) {
  if (data_.empty()) throw Error(ErrorKind::kEmptyDataset, "no observations");
  system_ = factor_kernel_matrix(kernel_, data_.points(), noise_variance_);
  alpha_ = chol_solve(system_.chol, data_.values());
}

Gaussian1D GpModel::posterior(std::span<const double> x) const {
  std::vector<double> k;
  std::vector<double> v;
  return posterior_with_scratch(*this, x, k, v);
}

void GpModel::posterior_batch(std::span<const Point> xs, std::span<Gaussian1D> out) const {
  if (xs.size() != out.size()) {
    throw Error(ErrorKind::kLengthMismatch, "output span does not match inputs");
  }
  std::vector<double> k;
  std::vector<double> v;
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = posterior_with_scratch(*this, xs[i], k, v);
}

SpdMatrix GpModel::posterior_covariance(std::span<const Point> grid) const {
  const std::size_t g = grid.size();
  const auto& points = data_.points();
  // Columns of V = L⁻¹·k(X, grid).
  std::vector<std::vector<double>> v(g);
  for (std::size_t j = 0; j < g; ++j) {
    if (grid[j].size() != dim()) {
      throw Error(ErrorKind::kDimensionMismatch, "grid point has wrong dimension");
    }
    std::vector<double> k(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) k[i] = eval_kernel(kernel_, grid[j], points[i]);
    v[j] = forward_substitute(system_.chol.lower, k);
  }
  SpdMatrix cov(g, g);
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = i; j < g; ++j) {
      const double c = eval_kernel(kernel_, grid[i], grid[j]) - simd::dot(v[i], v[j]);
      cov(i, j) = c;
      cov(j, i) = c;
    }
    cov(i, i) = std::max(cov(i, i), 0.0);
  }
  return cov;
}

Gaussian1D GpModel::de_standardize(const Gaussian1D& g) const {
  const Standardization& s = data_.standardization();
  return {s.de_standardize(g.mean), s.scale * g.sd};
}

double GpModel::log_marginal_likelihood() const {
  return lml_from_system(system_, data_.values(), nullptr);
}

GpModel fit_gp(const Dataset& data, KernelKind kind, double noise_variance, FitTrace* trace) {
  if (data.empty()) throw Error(ErrorKind::kEmptyDataset, "no observations");
  const Matrix distances = pairwise_squared_distances(data.points());
  const std::vector<double>& y = data.values();

  auto evaluate = [&](double lengthscale, double amplitude) {
    const KernelSpec spec{kind, lengthscale, amplitude};
    try {
      return lml_from_system(factor_kernel_matrix_from_distances(spec, distances, noise_variance),
                             y, nullptr);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kNotPositiveDefinite) throw;
      return -std::numeric_limits<double>::infinity();
    }
  };

  const std::vector<double> lengthscales =
      log_grid(kMinLengthscale, kMaxLengthscale, kMleGridSize);
  const std::vector<double> amplitudes = log_grid(kMinAmplitude, kMaxAmplitude, kMleGridSize);

  double best_l = kInitialLengthscale;
  double best_a = kInitialAmplitude;
  double best = evaluate(best_l, best_a);
  const double initial = best;
  std::size_t best_li = 0;
  std::size_t best_ai = 0;
  bool grid_improved = false;
  std::vector<double> grid_lml;
  grid_lml.reserve(lengthscales.size() * amplitudes.size());
  for (std::size_t i = 0; i < lengthscales.size(); ++i) {
    for (std::size_t j = 0; j < amplitudes.size(); ++j) {
      const double value = evaluate(lengthscales[i], amplitudes[j]);
      grid_lml.push_back(value);
      if (value > best) {
        best = value;
        best_l = lengthscales[i];
        best_a = amplitudes[j];
        best_li = i;
        best_ai = j;
        grid_improved = true;
      }
    }
  }

  // Golden-section refinement in log space, first lengthscale then
  // amplitude, each bracketed by the neighbouring grid values.
  auto refine = [&](const std::vector<double>& grid, std::size_t index, bool on_lengthscale,
                    int iterations) {
    const double center = on_lengthscale ? best_l : best_a;
    double lo;
    double hi;
    if (grid_improved) {
      lo = std::log(grid[index == 0 ? 0 : index - 1]);
      hi = std::log(grid[std::min(index + 1, grid.size() - 1)]);
    } else {
      const double step = std::log(grid[1]) - std::log(grid[0]);
      lo = std::max(std::log(center) - step, std::log(grid.front()));
      hi = std::min(std::log(center) + step, std::log(grid.back()));
    }
    auto f = [&](double log_value) {
      const double value = std::exp(log_value);
      const double lml = on_lengthscale ? evaluate(value, best_a) : evaluate(best_l, value);
      if (lml > best) {
        best = lml;
        (on_lengthscale ? best_l : best_a) = value;
      }
      return lml;
    };
    constexpr double kInvPhi = 0.6180339887498949;
    double c = hi - kInvPhi * (hi - lo);
    double d = lo + kInvPhi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < iterations; ++it) {
      if (fc >= fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - kInvPhi * (hi - lo);
        fc = f(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + kInvPhi * (hi - lo);
        fd = f(d);
      }
    }
  };
  refine(lengthscales, best_li, true, kMleRefineIterations / 2);
  refine(amplitudes, best_ai, false, kMleRefineIterations - kMleRefineIterations / 2);

  if (trace != nullptr) {
    trace->initial = {kind, kInitialLengthscale, kInitialAmplitude};
    trace->initial_lml = initial;
    trace->lengthscale_grid = lengthscales;
    trace->amplitude_grid = amplitudes;
    trace->grid_lml = std::move(grid_lml);
    trace->best_lml = best;
  }
  return GpModel(data, clamp_to_box(KernelSpec{kind, best_l, best_a}), noise_variance);
}

}  // namespace w2bgp
