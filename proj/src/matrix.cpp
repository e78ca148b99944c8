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

#include "w2bgp/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "w2bgp/error.hpp"
#include "w2bgp/simd/vecops.hpp"

namespace w2bgp {
namespace {

void require_square(const Matrix& a, const char* what) {
  if (!a.square()) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + " needs a square matrix, got " +
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "matrix shapes differ");
  }
}

Matrix from_eigen(const SymmetricEigen& eig, double (*map)(double)) {
  // V·diag(f(λ))·Vᵀ; out(i, j) = Σ_k V(i,k)·f(λ_k)·V(j,k).
  const std::size_t n = eig.values.size();
  Matrix scaled = eig.vectors;  // row j holds f(λ_k)·V(j, k)
  for (std::size_t k = 0; k < n; ++k) {
    const double f = map(eig.values[k]);
    for (std::size_t j = 0; j < n; ++j) scaled(j, k) *= f;
  }
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double value = simd::dot(eig.vectors.row(i), scaled.row(j));
      out(i, j) = value;
      out(j, i) = value;
    }
  }
  return out;
}

double clamped_sqrt(double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }
double inverse_sqrt(double x) { return 1.0 / std::sqrt(x); }

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorKind::kDimensionMismatch, "ragged rows");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "inner dimensions differ");
  }
  const Matrix bt = transpose(b);
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = simd::dot(a.row(i), bt.row(j));
  return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

Matrix scale(const Matrix& a, double factor) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= factor;
  return out;
}

double trace(const Matrix& a) {
  require_square(a, "trace");
  double t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

double frobenius_norm(const Matrix& a) {
  return std::sqrt(simd::dot(a.values(), a.values()));
}

Matrix symmetrize(const Matrix& a) {
  require_square(a, "symmetrize");
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const double mean = 0.5 * (a(i, j) + a(j, i));
      out(i, j) = mean;
      out(j, i) = mean;
    }
  }
  return out;
}

bool is_symmetric(const Matrix& a, double relative_tolerance) {
  if (!a.square()) return false;
  const double bound = relative_tolerance * std::max(frobenius_norm(a), 1e-300);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > bound) return false;
  return true;
}

double CholeskyFactor::log_determinant() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < lower.rows(); ++i) sum += std::log(lower(i, i));
  return 2.0 * sum;
}

CholeskyFactor cholesky(const SpdMatrix& a) {
  require_square(a, "cholesky");
  const std::size_t n = a.rows();
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::span<const double> row_i = l.row(i).first(i);
    for (std::size_t j = 0; j < i; ++j) {
      const double s = a(i, j) - simd::dot(row_i.first(j), l.row(j).first(j));
      l(i, j) = s / l(j, j);
    }
    const double pivot = a(i, i) - simd::dot(row_i, row_i);
    if (!(pivot > 0.0)) {
      throw Error(ErrorKind::kNotPositiveDefinite,
                  "non-positive pivot at row " + std::to_string(i));
    }
    l(i, i) = std::sqrt(pivot);
  }
  return CholeskyFactor{std::move(l)};
}

CholeskyFactor cholesky_with_jitter(const SpdMatrix& a, SpdMatrix* jittered) {
  require_square(a, "cholesky");
  const std::size_t n = a.rows();
  double mean_diag = n == 0 ? 0.0 : trace(a) / static_cast<double>(n);
  if (!(mean_diag > 0.0)) mean_diag = 1.0;
  double jitter = kBaseJitter * mean_diag;
  for (int attempt = 0; attempt <= kMaxJitterDoublings; ++attempt, jitter *= 2.0) {
    SpdMatrix trial = a;
    for (std::size_t i = 0; i < n; ++i) trial(i, i) += jitter;
    try {
      CholeskyFactor factor = cholesky(trial);
      if (jittered != nullptr) *jittered = std::move(trial);
      return factor;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kNotPositiveDefinite) throw;
    }
  }
  throw Error(ErrorKind::kNotPositiveDefinite, "jitter exhausted");
}

std::vector<double> forward_substitute(const Matrix& lower, std::span<const double> b) {
  const std::size_t n = lower.rows();
  if (b.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch,
                "rhs length " + std::to_string(b.size()) + " vs " + std::to_string(n));
  }
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = b[i] - simd::dot(lower.row(i).first(i), std::span<const double>(y).first(i));
    y[i] = s / lower(i, i);
  }
  return y;
}

std::vector<double> backward_substitute_transposed(const Matrix& lower,
                                                   std::span<const double> y) {
  const std::size_t n = lower.rows();
  if (y.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch,
                "rhs length " + std::to_string(y.size()) + " vs " + std::to_string(n));
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = y[k];
    for (std::size_t i = k + 1; i < n; ++i) s -= lower(i, k) * x[i];
    x[k] = s / lower(k, k);
  }
  return x;
}

std::vector<double> chol_solve(const CholeskyFactor& l, std::span<const double> b) {
  return backward_substitute_transposed(l.lower, forward_substitute(l.lower, b));
}

SymmetricEigen symmetric_eigen(const Matrix& input, double tolerance, int max_sweeps) {
  require_square(input, "symmetric_eigen");
  const std::size_t n = input.rows();
  Matrix a = symmetrize(input);
  Matrix v = Matrix::identity(n);
  const double scale_norm = std::max(frobenius_norm(a), 1e-300);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > tolerance * scale_norm) {
    if (++sweep > max_sweeps) {
      throw Error(ErrorKind::kNoConvergence, "Jacobi eigen solver did not converge");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  SymmetricEigen out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i);
  out.vectors = std::move(v);
  return out;
}

SpdMatrix spd_sqrt(const SpdMatrix& a) {
  return from_eigen(symmetric_eigen(a), &clamped_sqrt);
}

SpdMatrix spd_inverse_sqrt(const SpdMatrix& a) {
  const SymmetricEigen eig = symmetric_eigen(a);
  for (double lambda : eig.values) {
    if (!(lambda > 0.0)) {
      throw Error(ErrorKind::kNotPositiveDefinite, "inverse square root of a singular matrix");
    }
  }
  return from_eigen(eig, &inverse_sqrt);
}

}  // namespace w2bgp
