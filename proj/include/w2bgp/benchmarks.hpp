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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "w2bgp/kernels.hpp"
#include "w2bgp/run_record.hpp"

namespace w2bgp {

using Objective = std::function<double(std::span<const double>)>;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Box domain with the affine map to and from the unit cube.
struct BoxDomain {
  std::vector<Interval> bounds;

  std::size_t dim() const noexcept { return bounds.size(); }
  Point from_unit(std::span<const double> u) const;
  Point to_unit(std::span<const double> x) const;
};

struct TestProblem {
  std::string name;
  std::size_t d = 0;
  BoxDomain domain;
  Objective objective;  // takes original problem units
  double optimum_value = 0.0;
  double optimum_tolerance = 0.0;
};

// Single-objective problems, all minimised.
const std::vector<std::string>& problem_names();

// Throws UnknownProblem or InvalidDimension.
TestProblem make_problem(std::string_view name, std::size_t d);

// The only dimension a fixed-dimension problem accepts; 0 for "any d".
std::size_t fixed_dimension(std::string_view name);

struct MultiFidelityProblem {
  std::string name;
  std::size_t d = 0;
  BoxDomain domain;
  std::vector<Objective> sources;  // index 0 is the ground truth
  std::vector<double> fidelities;
  std::vector<double> costs;
  double optimum_value = 0.0;      // ground truth, located numerically at load
};

const std::vector<std::string>& mf_problem_names();

// Environment variable W2BGP_MF_DEFINITIONS, else the bundled file.
std::filesystem::path default_mf_definitions_path();

// Reads sources from a line-oriented definition file:
//   name; d; source_index; fidelity; cost; expression
// Throws UnknownProblem, MissingDefinitionFile, ParseError.
MultiFidelityProblem make_mf_problem(std::string_view name, std::size_t d,
                                     const std::filesystem::path& definitions =
                                         default_mf_definitions_path());

// Arithmetic over x1..xd: + - * / ^, unary minus, parentheses, numbers, pi,
// and sin cos exp log abs sqrt.
class Expression {
 public:
  // Throws ParseError naming the offending position.
  static Expression parse(std::string_view text, std::size_t dim);

  double evaluate(std::span<const double> x) const;
  std::size_t dim() const noexcept { return dim_; }

  struct Node;

 private:
  std::vector<Node> nodes_;
  std::size_t root_ = 0;
  std::size_t dim_ = 0;

  friend class ExpressionParser;
};

struct Expression::Node {
  enum class Op { kConst, kVar, kAdd, kSub, kMul, kDiv, kPow, kNeg, kSin, kCos, kExp, kLog, kAbs, kSqrt };
  Op op = Op::kConst;
  double value = 0.0;
  std::size_t var = 0;
  std::size_t lhs = 0;
  std::size_t rhs = 0;
};

// One point per stratum [k/n, (k+1)/n) in every coordinate.
std::vector<Point> lhs_sample(std::size_t n, std::size_t d, std::uint64_t seed);

// Default design and budget sizes for dimension d.
std::size_t default_initial_size(std::size_t d);  // max{d+1, min{2d, 10}}
std::size_t default_budget(std::size_t d);        // min{30d, 150}

struct GapCurve {
  std::vector<double> values;
  double y0 = 0.0;
  double ystar = 0.0;
};

// G_n = (y0 − y⁺_n)/(y0 − y*), clamped to [0, 1]. Throws DegenerateStart when
// y0 <= y* + 1e-12; callers treat that run as an all-ones curve.
GapCurve gap_curve(std::span<const double> best_seen, double y0, double ystar);
GapCurve all_ones_curve(std::size_t n, double y0, double ystar);

// Mean of the curve values.
double augc(const GapCurve& curve);

// Two-sided p-value of the rank-sum test: normal approximation with midranks,
// tie-corrected variance and continuity correction; exact null distribution
// when both samples have at most 8 values and no ties. Throws TooFewSamples.
double mann_whitney_u(std::span<const double> a, std::span<const double> b);

// Percentage of queries per source; sums to 100.
std::vector<double> usage_fraction(const RunRecord& record);

}  // namespace w2bgp
