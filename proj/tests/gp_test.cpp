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

#include <algorithm>
#include <numbers>

#include "support.hpp"
#include "w2bgp/error.hpp"
#include "w2bgp/gp.hpp"

namespace w2bgp {
namespace {

using testing::Gen;

double log_determinant_by_elimination(Matrix a) {
  const std::size_t n = a.rows();
  double log_det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    log_det += std::log(a(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return log_det;
}

TEST(Dataset, StandardizesToZeroMeanUnitSd) {
  Gen gen(20);
  const Dataset data = gen.dataset(12, 2);
  double mean = 0.0;
  double ss = 0.0;
  for (double v : data.values()) mean += v;
  mean /= 12.0;
  for (double v : data.values()) ss += (v - mean) * (v - mean);
  EXPECT_NEAR(mean, 0.0, 1e-12);
  EXPECT_NEAR(ss / 12.0, 1.0, 1e-12);
  for (std::size_t i = 0; i < data.size(); ++i) {
    EXPECT_NEAR(data.standardization().de_standardize(data.values()[i]), data.raw_values()[i],
                1e-12);
  }
}

TEST(Dataset, ConstantOutputsKeepUnitScale) {
  const Dataset data = Dataset::from_raw({{0.1}, {0.5}, {0.9}}, {4.0, 4.0, 4.0});
  EXPECT_EQ(data.standardization().scale, 1.0);
  for (double v : data.values()) EXPECT_EQ(v, 0.0);
}

TEST(Dataset, RejectsMalformedInput) {
  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kConfigError;
  };
  EXPECT_EQ(kind_of([] { Dataset::from_raw({}, {}); }), ErrorKind::kEmptyDataset);
  EXPECT_EQ(kind_of([] { Dataset::from_raw({{0.1}}, {1.0, 2.0}); }), ErrorKind::kLengthMismatch);
  EXPECT_EQ(kind_of([] { Dataset::from_raw({{0.1}, {0.1, 0.2}}, {1.0, 2.0}); }),
            ErrorKind::kDimensionMismatch);
  EXPECT_EQ(kind_of([] { Dataset::from_raw({{0.1}}, {std::nan("")}); }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([] { GpModel(Dataset(), KernelSpec{}, 1e-6); }), ErrorKind::kEmptyDataset);
}

TEST(GpModel, LogMarginalLikelihoodMatchesDirectFormula) {
  Gen gen(21);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 7;
    const Dataset data = gen.dataset(n, 2);
    const GpModel model(data, gen.kernel(), 1e-6);
    const Matrix kinv = testing::gauss_jordan_inverse(model.gram());
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) quad += data.values()[i] * kinv(i, j) * data.values()[j];
    }
    const double expected = -0.5 * quad - 0.5 * log_determinant_by_elimination(model.gram()) -
                            0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
    EXPECT_NEAR(model.log_marginal_likelihood(), expected, 1e-7 * (1.0 + std::abs(expected)));
  }
}

TEST(GpModel, BatchPosteriorIsBitIdentical) {
  Gen gen(22);
  const GpModel model(gen.dataset(10, 3), gen.kernel(), 1e-6);
  std::vector<Point> xs;
  for (int i = 0; i < 50; ++i) xs.push_back(gen.point(3));
  std::vector<Gaussian1D> out(xs.size());
  model.posterior_batch(xs, out);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_EQ(out[i], model.posterior(xs[i]));
}

TEST(GpModel, PosteriorCovarianceDiagonalMatchesPointwise) {
  Gen gen(23);
  const GpModel model(gen.dataset(8, 2), gen.kernel(), 1e-6);
  std::vector<Point> grid;
  for (int i = 0; i < 12; ++i) grid.push_back(gen.point(2));
  const SpdMatrix cov = model.posterior_covariance(grid);
  EXPECT_TRUE(is_symmetric(cov));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double sd = model.posterior(grid[i]).sd;
    EXPECT_NEAR(cov(i, i), sd * sd, 1e-10);
  }
}

TEST(GpModel, PosteriorReducesToPriorFarFromData) {
  const Dataset data = Dataset::from_raw({{0.0}, {0.01}}, {1.0, 2.0});
  const GpModel model(data, KernelSpec{KernelKind::kSquaredExponential, 0.01, 2.0}, 1e-6);
  const Gaussian1D far = model.posterior(Point{1.0});
  EXPECT_NEAR(far.mean, 0.0, 1e-12);
  EXPECT_NEAR(far.sd, std::sqrt(2.0), 1e-12);
  const Gaussian1D raw = model.predict(Point{1.0});
  EXPECT_NEAR(raw.mean, 1.5, 1e-12);
  EXPECT_NEAR(raw.sd, std::sqrt(2.0) * 0.5, 1e-12);
}

TEST(GpModel, QueryDimensionIsChecked) {
  Gen gen(24);
  const GpModel model(gen.dataset(4, 2), gen.kernel(), 1e-6);
  EXPECT_THROW(model.posterior(Point{0.5}), Error);
}

TEST(FitGp, NeverWorseThanInitialOrGrid) {
  Gen gen(25);
  for (int t = 0; t < 20; ++t) {
    const Dataset data = gen.dataset(5 + t % 10, 1 + t % 3);
    FitTrace trace;
    const GpModel model = fit_gp(data, kAllKernelKinds[t % 4], 1e-6, &trace);
    ASSERT_EQ(trace.grid_lml.size(),
              static_cast<std::size_t>(kMleGridSize) * static_cast<std::size_t>(kMleGridSize));
    const double grid_best = *std::max_element(trace.grid_lml.begin(), trace.grid_lml.end());
    EXPECT_GE(trace.best_lml, trace.initial_lml);
    EXPECT_GE(trace.best_lml, grid_best);
    EXPECT_NEAR(model.log_marginal_likelihood(), trace.best_lml, 1e-9);
    EXPECT_GE(model.kernel().lengthscale, kMinLengthscale);
    EXPECT_LE(model.kernel().lengthscale, kMaxLengthscale);
    EXPECT_GE(model.kernel().amplitude, kMinAmplitude);
    EXPECT_LE(model.kernel().amplitude, kMaxAmplitude);
  }
}

TEST(FitGp, RecoversSmoothFunction) {
  std::vector<Point> xs;
  std::vector<double> ys;
  for (int i = 0; i < 12; ++i) {
    const double x = i / 11.0;
    xs.push_back({x});
    ys.push_back(std::sin(6.0 * x));
  }
  const GpModel model =
      fit_gp(Dataset::from_raw(xs, ys), KernelKind::kSquaredExponential, kDefaultNoiseVariance);
  for (double x : {0.05, 0.33, 0.61, 0.97}) {
    EXPECT_NEAR(model.predict(Point{x}).mean, std::sin(6.0 * x), 1e-2);
  }
}

TEST(FitGp, IsDeterministic) {
  Gen gen(26);
  const Dataset data = gen.dataset(9, 2);
  const GpModel a = fit_gp(data, KernelKind::kMatern32, 1e-6);
  const GpModel b = fit_gp(data, KernelKind::kMatern32, 1e-6);
  EXPECT_EQ(a.kernel().lengthscale, b.kernel().lengthscale);
  EXPECT_EQ(a.kernel().amplitude, b.kernel().amplitude);
}

}  // namespace
}  // namespace w2bgp
