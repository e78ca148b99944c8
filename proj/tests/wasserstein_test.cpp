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

#include <gtest/gtest.h>

#include "support.hpp"
#include "w2bgp/error.hpp"
#include "w2bgp/wasserstein.hpp"

namespace w2bgp {
namespace {

using testing::Gen;

Gaussian1D random_gaussian(Gen& gen) { return {gen.uniform(-4.0, 4.0), gen.uniform(0.0, 3.0)}; }

TEST(WeightVector, ValidatesSimplex) {
  EXPECT_NO_THROW(WeightVector({0.25, 0.75}));
  EXPECT_NO_THROW(WeightVector({1.0}));
  for (const std::vector<double>& bad : std::vector<std::vector<double>>{
           {}, {0.5, 0.6}, {-0.1, 1.1}, {std::nan(""), 1.0}, {0.5, 0.5 - 1e-9}}) {
    try {
      WeightVector w(bad);
      FAIL() << "accepted an invalid weight vector";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kInvalidWeights);
    }
  }
}

TEST(W2Gaussian1D, IsAMetric) {
  Gen gen(30);
  for (int t = 0; t < 500; ++t) {
    const Gaussian1D a = random_gaussian(gen);
    const Gaussian1D b = random_gaussian(gen);
    const Gaussian1D c = random_gaussian(gen);
    EXPECT_EQ(w2_gaussian1d(a, a), 0.0);
    EXPECT_EQ(w2_gaussian1d(a, b), w2_gaussian1d(b, a));
    EXPECT_LE(w2_gaussian1d(a, c), w2_gaussian1d(a, b) + w2_gaussian1d(b, c) + 1e-12);
  }
}

TEST(W2Gaussian1D, AgreesWithBuresOnScalars) {
  Gen gen(31);
  for (int t = 0; t < 200; ++t) {
    const Gaussian1D a = random_gaussian(gen);
    const Gaussian1D b = random_gaussian(gen);
    const double bw = bures(Matrix::from_rows({{a.sd * a.sd}}), Matrix::from_rows({{b.sd * b.sd}}));
    const double dm = a.mean - b.mean;
    EXPECT_NEAR(w2_gaussian1d(a, b), std::sqrt(dm * dm + bw * bw), 1e-10);
  }
}

TEST(Bures, DiagonalClosedForm) {
  Gen gen(32);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 6;
    std::vector<double> a(n), b(n);
    double expected = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = gen.uniform(0.01, 5.0);
      b[i] = gen.uniform(0.01, 5.0);
      expected += (std::sqrt(a[i]) - std::sqrt(b[i])) * (std::sqrt(a[i]) - std::sqrt(b[i]));
    }
    EXPECT_NEAR(bures(Matrix::diagonal(a), Matrix::diagonal(b)), std::sqrt(expected), 1e-9);
  }
}

TEST(Bures, SymmetricAndZeroOnDiagonal) {
  Gen gen(33);
  for (int t = 0; t < 40; ++t) {
    const SpdMatrix a = gen.spd(1 + t % 6);
    const SpdMatrix b = gen.spd(1 + t % 6);
    EXPECT_NEAR(bures(a, b), bures(b, a), 1e-8);
    EXPECT_NEAR(bures(a, a), 0.0, 1e-6);
  }
  EXPECT_THROW(bures(Matrix::identity(2), Matrix::identity(3)), Error);
}

TEST(Barycenter1D, MinimizesWeightedSquaredDistance) {
  Gen gen(34);
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = 2 + t % 4;
    std::vector<Gaussian1D> gs;
    for (std::size_t i = 0; i < m; ++i) gs.push_back(random_gaussian(gen));
    const WeightVector lambda = gen.simplex(m);
    auto objective = [&](const Gaussian1D& c) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double w = w2_gaussian1d(c, gs[i]);
        s += lambda[i] * w * w;
      }
      return s;
    };
    const Gaussian1D bary = barycenter_gaussian1d(gs, lambda);
    // Coarse grid search over (mean, sd) never beats the closed form.
    double grid_best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 200; ++i) {
      for (int j = 0; j <= 100; ++j) {
        grid_best = std::min(grid_best, objective({-4.0 + 0.04 * i, 0.03 * j}));
      }
    }
    EXPECT_LE(objective(bary), grid_best + 1e-12);
    EXPECT_LE(grid_best - objective(bary), 1e-3);
  }
}

TEST(Barycenter1D, OneHotWeightsSelectInput) {
  Gen gen(35);
  std::vector<Gaussian1D> gs{random_gaussian(gen), random_gaussian(gen), random_gaussian(gen)};
  for (std::size_t m = 0; m < 3; ++m) {
    std::vector<double> w(3, 0.0);
    w[m] = 1.0;
    EXPECT_EQ(barycenter_gaussian1d(gs, WeightVector(w)), gs[m]);
  }
  EXPECT_THROW(barycenter_gaussian1d(gs, WeightVector({0.5, 0.5})), Error);
}

TEST(CovarianceBarycenter, SatisfiesFixedPointEquation) {
  Gen gen(36);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 5;
    const std::vector<SpdMatrix> sigmas{gen.spd(n), gen.spd(n), gen.spd(n)};
    const WeightVector lambda = gen.simplex(3);
    const SpdMatrix s = barycenter_cov_fixed_point(sigmas, lambda, 1e-12, 500).sigma;
    const SpdMatrix root = spd_sqrt(s);
    SpdMatrix rhs(n, n);
    for (std::size_t m = 0; m < 3; ++m) {
      rhs = add(rhs, scale(spd_sqrt(symmetrize(multiply(multiply(root, sigmas[m]), root))),
                           lambda[m]));
    }
    EXPECT_LT(testing::max_abs_diff(rhs, s), 1e-8 * frobenius_norm(s));
  }
}

TEST(CovarianceBarycenter, OneHotReturnsInput) {
  Gen gen(37);
  const std::vector<SpdMatrix> sigmas{gen.spd(4), gen.spd(4)};
  const SpdMatrix s = barycenter_cov_fixed_point(sigmas, WeightVector({0.0, 1.0})).sigma;
  EXPECT_LT(testing::max_abs_diff(s, sigmas[1]), 1e-9);
}

TEST(CovarianceBarycenter, ReportsNonConvergence) {
  Gen gen(38);
  const std::vector<SpdMatrix> sigmas{gen.spd(6, 0.01), gen.spd(6, 0.01)};
  try {
    barycenter_cov_fixed_point(sigmas, WeightVector({0.5, 0.5}), 1e-300, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoConvergence);
  }
}

TEST(W2GpGrid, ReducesToPointwiseDistanceOnOnePoint) {
  Gen gen(39);
  for (int t = 0; t < 20; ++t) {
    const GpModel a(gen.dataset(6, 2), gen.kernel(), 1e-6);
    const GpModel b(gen.dataset(6, 2), gen.kernel(), 1e-6);
    const std::vector<Point> grid{gen.point(2)};
    EXPECT_NEAR(w2_gp_grid(a, b, grid), w2_gaussian1d(a.predict(grid[0]), b.predict(grid[0])),
                1e-7);
    std::vector<Point> wide;
    for (int i = 0; i < 6; ++i) wide.push_back(gen.point(2));
    EXPECT_NEAR(w2_gp_grid(a, b, wide), w2_gp_grid(b, a, wide), 1e-6);
    EXPECT_NEAR(w2_gp_grid(a, a, wide), 0.0, 1e-5);
  }
}

TEST(W2bgpPosterior, IsPointwiseBarycenterOfPredictions) {
  Gen gen(40);
  std::vector<GpModel> models;
  for (int i = 0; i < 4; ++i) models.emplace_back(gen.dataset(5, 1), gen.kernel(), 1e-6);
  const WeightVector lambda = gen.simplex(4);
  const Point x = gen.point(1);
  std::vector<Gaussian1D> gs;
  for (const auto& m : models) gs.push_back(m.predict(x));
  EXPECT_EQ(w2bgp_posterior(models, lambda, x), barycenter_gaussian1d(gs, lambda));
  EXPECT_THROW(w2bgp_posterior(models, WeightVector({1.0}), x), Error);
}

}  // namespace
}  // namespace w2bgp
