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

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "w2bgp/benchmarks.hpp"
#include "w2bgp/error.hpp"

namespace w2bgp {
namespace {

using std::numbers::pi;

// Hartmann constants from the Virtual Library of Simulation Experiments
// (sfu.ca/~ssurjano, hart3 and hart6 pages).
constexpr std::array<double, 4> kHartmannAlpha = {1.0, 1.2, 3.0, 3.2};

constexpr double kHartmann3A[4][3] = {
    {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}, {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}};
constexpr double kHartmann3P[4][3] = {{0.3689, 0.1170, 0.2673},
                                      {0.4699, 0.4387, 0.7470},
                                      {0.1091, 0.8732, 0.5547},
                                      {0.0381, 0.5743, 0.8828}};

constexpr double kHartmann6A[4][6] = {{10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
                                      {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
                                      {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
                                      {17.0, 8.0, 0.05, 10.0, 0.1, 14.0}};
constexpr double kHartmann6P[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                      {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                      {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                                      {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};

template <std::size_t D>
double hartmann(std::span<const double> x, const double (&a)[4][D], const double (&p)[4][D]) {
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < D; ++j) inner += a[i][j] * (x[j] - p[i][j]) * (x[j] - p[i][j]);
    sum += kHartmannAlpha[i] * std::exp(-inner);
  }
  return -sum;
}

struct Definition {
  const char* name;
  std::size_t fixed_d;  // 0: any dimension
  Interval (*bounds)(std::size_t axis);
  double (*objective)(std::span<const double>);
  double (*optimum)(std::size_t d);
  double tolerance_per_dim;  // tolerance = tolerance_per_dim * (fixed_d ? 1 : d)
};

double ursem03_term(double x) {
  return -std::sin(2.2 * pi * x + 0.5 * pi) * ((2.0 - std::abs(x)) / 2.0) *
         ((3.0 - std::abs(x)) / 2.0);
}

// Formulas follow the table of single-objective test problems. problem_02 is
// the sum sin(x) + sin(10x/3): the product form cannot reach the listed
// optimum of -1.8996.
const std::array<Definition, 16> kDefinitions = {{
    {"problem_02", 1, [](std::size_t) { return Interval{2.7, 7.5}; },
     [](std::span<const double> x) { return std::sin(x[0]) + std::sin(10.0 * x[0] / 3.0); },
     [](std::size_t) { return -1.8996; }, 1e-3},
    {"problem_03", 1, [](std::size_t) { return Interval{-10.0, 10.0}; },
     [](std::span<const double> x) {
       double s = 0.0;
       for (int k = 0; k <= 5; ++k) s += k * std::sin((k + 1) * x[0] + k);
       return -s;
     },
     [](std::size_t) { return -12.0312; }, 1e-3},
    {"problem_05", 1, [](std::size_t) { return Interval{0.0, 1.2}; },
     [](std::span<const double> x) { return -(1.4 - 3.0 * x[0]) * std::sin(18.0 * x[0]); },
     [](std::size_t) { return -1.4891; }, 1e-3},
    {"problem_07", 1, [](std::size_t) { return Interval{2.7, 7.5}; },
     [](std::span<const double> x) {
       return std::sin(x[0]) + std::sin(10.0 * x[0] / 3.0) + std::log(x[0]) - 0.84 * x[0] + 3.0;
     },
     [](std::size_t) { return -1.6013; }, 1e-3},
    {"problem_11", 1, [](std::size_t) { return Interval{-pi, 2.0 * pi}; },
     [](std::span<const double> x) { return 2.0 * std::cos(x[0]) + std::cos(2.0 * x[0]); },
     [](std::size_t) { return -1.5; }, 1e-6},
    {"problem_14", 1, [](std::size_t) { return Interval{0.0, 4.0}; },
     [](std::span<const double> x) { return -std::exp(-x[0]) * std::sin(2.0 * pi * x[0]); },
     [](std::size_t) { return -0.7887; }, 1e-3},
    {"problem_15", 1, [](std::size_t) { return Interval{-5.0, 5.0}; },
     [](std::span<const double> x) {
       return (x[0] * x[0] - 5.0 * x[0] + 6.0) / (x[0] * x[0] + 1.0);
     },
     [](std::size_t) { return -0.03553391; }, 1e-6},
    {"problem_22", 1, [](std::size_t) { return Interval{0.0, 20.0}; },
     [](std::span<const double> x) {
       const double s = std::sin(x[0]);
       return std::exp(-3.0 * x[0]) - s * s * s;
     },
     [](std::size_t) { return std::exp(-27.0 * pi / 2.0) - 1.0; }, 1e-6},
    {"alpine01", 0, [](std::size_t) { return Interval{-10.0, 10.0}; },
     [](std::span<const double> x) {
       double s = 0.0;
       for (double v : x) s += std::abs(v * std::sin(v) + 0.1 * v);
       return s;
     },
     [](std::size_t) { return 0.0; }, 1e-6},
    {"bird", 2, [](std::size_t) { return Interval{-2.0 * pi, 2.0 * pi}; },
     [](std::span<const double> x) {
       const double a = 1.0 - std::sin(x[0]);
       const double b = 1.0 - std::cos(x[1]);
       return (x[0] - x[1]) * (x[0] - x[1]) + std::exp(a * a) * std::cos(x[1]) +
              std::exp(b * b) * std::sin(x[0]);
     },
     [](std::size_t) { return -106.7645; }, 1e-3},
    {"michalewicz", 2, [](std::size_t) { return Interval{0.0, pi}; },
     [](std::span<const double> x) {
       double s = 0.0;
       for (std::size_t i = 0; i < x.size(); ++i) {
         const double inner = std::sin((i + 1) * x[i] * x[i] / pi);
         s += std::sin(x[i]) * std::pow(inner, 20);
       }
       return -s;
     },
     [](std::size_t) { return -1.8013; }, 1e-3},
    {"styblinskiTang", 0, [](std::size_t) { return Interval{-5.0, 5.0}; },
     [](std::span<const double> x) {
       double s = 0.0;
       for (double v : x) s += v * v * v * v - 16.0 * v * v + 5.0 * v;
       return 0.5 * s;
     },
     // The listed per-dimension value is rounded; the true minimum is
     // -39.16617 per dimension, inside the tolerance.
     [](std::size_t d) { return -39.16599 * static_cast<double>(d); }, 1e-3},
    {"ursem03", 2,
     [](std::size_t axis) { return axis == 0 ? Interval{-2.0, 2.0} : Interval{-1.5, 1.5}; },
     [](std::span<const double> x) { return ursem03_term(x[0]) + ursem03_term(x[1]); },
     [](std::size_t) { return -3.0; }, 1e-6},
    {"ursemWaves", 2,
     [](std::size_t axis) { return axis == 0 ? Interval{-0.9, 1.2} : Interval{-1.2, 1.2}; },
     [](std::span<const double> x) {
       const double a = 0.3 * x[0];
       return -(a * a * a) + (x[1] * x[1] - 4.5 * x[1] * x[1]) * x[0] * x[1] +
              4.7 * std::cos(3.0 * x[0] - x[1] * x[1] * (2.0 + x[0])) *
                  std::sin(2.5 * pi * x[0]);
     },
     [](std::size_t) { return -7.306999; }, 1e-3},
    {"hartmann3", 3, [](std::size_t) { return Interval{0.0, 1.0}; },
     [](std::span<const double> x) { return hartmann<3>(x, kHartmann3A, kHartmann3P); },
     [](std::size_t) { return -3.862782145; }, 1e-6},
    {"hartmann6", 6, [](std::size_t) { return Interval{0.0, 1.0}; },
     [](std::span<const double> x) { return hartmann<6>(x, kHartmann6A, kHartmann6P); },
     [](std::size_t) { return -3.32237; }, 1e-3},
}};

const Definition* find(std::string_view name) {
  for (const Definition& def : kDefinitions) {
    if (name == def.name) return &def;
  }
  return nullptr;
}

}  // namespace

Point BoxDomain::from_unit(std::span<const double> u) const {
  if (u.size() != bounds.size()) throw Error(ErrorKind::kDimensionMismatch, "unit point");
  Point x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    x[i] = bounds[i].lo + u[i] * (bounds[i].hi - bounds[i].lo);
  }
  return x;
}

Point BoxDomain::to_unit(std::span<const double> x) const {
  if (x.size() != bounds.size()) throw Error(ErrorKind::kDimensionMismatch, "problem point");
  Point u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    u[i] = (x[i] - bounds[i].lo) / (bounds[i].hi - bounds[i].lo);
  }
  return u;
}

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Definition& def : kDefinitions) out.emplace_back(def.name);
    return out;
  }();
  return names;
}

std::size_t fixed_dimension(std::string_view name) {
  const Definition* def = find(name);
  if (def == nullptr) throw Error(ErrorKind::kUnknownProblem, std::string(name));
  return def->fixed_d;
}

TestProblem make_problem(std::string_view name, std::size_t d) {
  const Definition* def = find(name);
  if (def == nullptr) throw Error(ErrorKind::kUnknownProblem, std::string(name));
  if (d == 0 || (def->fixed_d != 0 && d != def->fixed_d)) {
    throw Error(ErrorKind::kInvalidDimension,
                std::string(name) + " does not accept d=" + std::to_string(d));
  }
  TestProblem problem;
  problem.name = def->name;
  problem.d = d;
  for (std::size_t i = 0; i < d; ++i) problem.domain.bounds.push_back(def->bounds(i));
  const auto fn = def->objective;
  problem.objective = [fn, d](std::span<const double> x) {
    if (x.size() != d) throw Error(ErrorKind::kDimensionMismatch, "objective input");
    return fn(x);
  };
  problem.optimum_value = def->optimum(d);
  problem.optimum_tolerance =
      def->tolerance_per_dim * static_cast<double>(def->fixed_d != 0 ? 1 : d);
  return problem;
}

}  // namespace w2bgp
