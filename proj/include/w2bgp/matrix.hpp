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

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace w2bgp {

// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<const double> values() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Symmetric positive-(semi)definite matrices share the dense representation;
// the operations below check the properties they rely on.
using SpdMatrix = Matrix;

Matrix transpose(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double factor);
double trace(const Matrix& a);
double frobenius_norm(const Matrix& a);
// Returns (a + aᵀ) / 2.
Matrix symmetrize(const Matrix& a);
bool is_symmetric(const Matrix& a, double relative_tolerance = 1e-12);

// Lower-triangular L with L·Lᵀ equal to the factored matrix.
struct CholeskyFactor {
  Matrix lower;

  std::size_t size() const noexcept { return lower.rows(); }
  double log_determinant() const;
};

// Throws NotPositiveDefinite when a pivot is not strictly positive.
CholeskyFactor cholesky(const SpdMatrix& a);

// Adds jitter = 1e-8 * mean(diag) to the diagonal and retries with the jitter
// doubled, up to six doublings, before giving up with NotPositiveDefinite.
// `jittered` (optional) receives the matrix that was actually factored.
CholeskyFactor cholesky_with_jitter(const SpdMatrix& a, SpdMatrix* jittered = nullptr);

inline constexpr double kBaseJitter = 1e-8;
inline constexpr int kMaxJitterDoublings = 6;

// Solves (L·Lᵀ)·x = b.
std::vector<double> chol_solve(const CholeskyFactor& l, std::span<const double> b);

// Solves L·y = b for lower-triangular L.
std::vector<double> forward_substitute(const Matrix& lower, std::span<const double> b);
// Solves Lᵀ·x = y for lower-triangular L.
std::vector<double> backward_substitute_transposed(const Matrix& lower,
                                                   std::span<const double> y);

struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;  // column k is the eigenvector for values[k]
};

// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls below
// `tolerance` times the matrix norm. Throws NoConvergence after `max_sweeps`.
SymmetricEigen symmetric_eigen(const Matrix& a, double tolerance = 1e-12,
                               int max_sweeps = 100);

// Principal square root via eigendecomposition; negative eigenvalues from
// round-off are clamped to zero.
SpdMatrix spd_sqrt(const SpdMatrix& a);

// Inverse principal square root; eigenvalues must be strictly positive.
SpdMatrix spd_inverse_sqrt(const SpdMatrix& a);

}  // namespace w2bgp
