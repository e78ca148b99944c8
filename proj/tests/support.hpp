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

// Shared generators and oracles for the unit tests.

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "w2bgp/gp.hpp"
#include "w2bgp/matrix.hpp"
#include "w2bgp/wasserstein.hpp"

namespace w2bgp::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  double normal(double mean = 0.0, double sd = 1.0) {
    return std::normal_distribution<double>(mean, sd)(rng_);
  }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  Point point(std::size_t d) {
    Point p(d);
    for (double& v : p) v = uniform();
    return p;
  }

  WeightVector simplex(std::size_t m) {
    std::vector<double> w(m);
    for (double& x : w) x = -std::log(1.0 - uniform());
    const double s = std::accumulate(w.begin(), w.end(), 0.0);
    double rest = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      w[i] /= s;
      if (i + 1 < m) rest -= w[i];
    }
    w[m - 1] = std::max(rest, 0.0);
    return WeightVector(std::move(w));
  }

  Matrix matrix(std::size_t r, std::size_t c) {
    Matrix a(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) a(i, j) = normal();
    }
    return a;
  }

  SpdMatrix spd(std::size_t n, double floor = 0.5) {
    const Matrix a = matrix(n, n);
    Matrix s = multiply(a, transpose(a));
    for (std::size_t i = 0; i < n; ++i) s(i, i) += floor;
    return symmetrize(s);
  }

  KernelSpec kernel() {
    return KernelSpec{kAllKernelKinds[index(4)], log_uniform(0.05, 1.0), log_uniform(0.2, 5.0)};
  }

  Dataset dataset(std::size_t n, std::size_t d) {
    std::vector<Point> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < n; ++i) {
      xs.push_back(point(d));
      ys.push_back(normal(1.0, 3.0));
    }
    return Dataset::from_raw(std::move(xs), std::move(ys));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Gauss-Jordan inverse with partial pivoting.
inline Matrix gauss_jordan_inverse(Matrix a) {
  const std::size_t n = a.rows();
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a(r, c)) > std::abs(a(p, c))) p = r;
    }
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(c, j), a(p, j));
      std::swap(inv(c, j), inv(p, j));
    }
    const double pivot = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  }
  return worst;
}

}  // namespace w2bgp::testing
