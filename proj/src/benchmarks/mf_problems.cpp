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

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <string>

#include "w2bgp/benchmarks.hpp"
#include "w2bgp/error.hpp"

namespace w2bgp {
namespace {

struct MfShape {
  const char* name;
  std::size_t sources;
  Interval bounds;
};

constexpr MfShape kShapes[] = {
    {"forrester", 4, {0.0, 1.0}},
    {"rosenbrock", 3, {-2.0, 2.0}},
    {"shiftedRotatedRastrigin", 3, {-0.1, 0.2}},
    {"heterogeneous", 2, {0.0, 1.0}},
    {"paciorek", 2, {0.3, 1.0}},
};

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r'; };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_field(std::string_view field, const std::string& where) {
  T value{};
  field = trim(field);
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || end != field.data() + field.size()) {
    throw Error(ErrorKind::kParseError, where + ": bad number '" + std::string(field) + "'");
  }
  return value;
}

struct SourceLine {
  double fidelity = 0.0;
  double cost = 0.0;
  std::shared_ptr<const Expression> expression;
};

// Minimum of the ground truth: a dense LHS scan followed by
// a shrinking coordinate search from the best sample.
double locate_minimum(const Objective& f, const BoxDomain& domain) {
  const std::size_t d = domain.dim();
  const std::size_t samples = std::min<std::size_t>(20000, 4000 * d);
  const std::vector<Point> unit = lhs_sample(samples, d, 0x0b7u);
  Point best_u = unit.front();
  double best = std::numeric_limits<double>::infinity();
  for (const Point& u : unit) {
    const double v = f(domain.from_unit(u));
    if (v < best) {
      best = v;
      best_u = u;
    }
  }
  double step = 1.0 / static_cast<double>(samples);
  step = std::max(step, 0.05 / static_cast<double>(d));
  while (step > 1e-10) {
    bool improved = false;
    for (std::size_t k = 0; k < d; ++k) {
      for (double dir : {1.0, -1.0}) {
        Point trial = best_u;
        trial[k] = std::clamp(trial[k] + dir * step, 0.0, 1.0);
        const double v = f(domain.from_unit(trial));
        if (v < best) {
          best = v;
          best_u = std::move(trial);
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace

const std::vector<std::string>& mf_problem_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const MfShape& s : kShapes) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

std::filesystem::path default_mf_definitions_path() {
  if (const char* env = std::getenv("W2BGP_MF_DEFINITIONS"); env != nullptr && *env != '\0') {
    return env;
  }
  return W2BGP_DEFAULT_MF_DEFINITIONS;
}

MultiFidelityProblem make_mf_problem(std::string_view name, std::size_t d,
                                     const std::filesystem::path& definitions) {
  const MfShape* shape = nullptr;
  for (const MfShape& s : kShapes) {
    if (name == s.name) shape = &s;
  }
  if (shape == nullptr) throw Error(ErrorKind::kUnknownProblem, std::string(name));
  if (d == 0) throw Error(ErrorKind::kInvalidDimension, "d must be >= 1");

  std::ifstream in(definitions);
  if (!in) {
    throw Error(ErrorKind::kMissingDefinitionFile, "cannot open " + definitions.string());
  }

  std::map<std::size_t, SourceLine> found;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const std::string where = definitions.filename().string() + ":" + std::to_string(line_no);
    std::string_view fields[6];
    for (int f = 0; f < 5; ++f) {
      const std::size_t semi = view.find(';');
      if (semi == std::string_view::npos) {
        throw Error(ErrorKind::kParseError, where + ": expected 6 ';'-separated fields");
      }
      fields[f] = trim(view.substr(0, semi));
      view.remove_prefix(semi + 1);
    }
    fields[5] = trim(view);
    if (fields[0] != name) continue;
    if (parse_field<std::size_t>(fields[1], where) != d) continue;
    const auto index = parse_field<std::size_t>(fields[2], where);
    if (index < 1 || index > shape->sources) {
      throw Error(ErrorKind::kParseError, where + ": source index out of range");
    }
    SourceLine source;
    source.fidelity = parse_field<double>(fields[3], where);
    source.cost = parse_field<double>(fields[4], where);
    if (!(source.fidelity > 0.0) || source.fidelity > 1.0) {
      throw Error(ErrorKind::kNonPositiveFidelity, where + ": fidelity must lie in (0, 1]");
    }
    if (!(source.cost > 0.0)) throw Error(ErrorKind::kParseError, where + ": cost must be > 0");
    source.expression = std::make_shared<const Expression>(Expression::parse(fields[5], d));
    found[index - 1] = std::move(source);
  }

  if (found.empty()) {
    throw Error(ErrorKind::kInvalidDimension, std::string(name) + " has no definition for d=" +
                                                  std::to_string(d));
  }
  if (found.size() != shape->sources) {
    throw Error(ErrorKind::kParseError, std::string(name) + " d=" + std::to_string(d) +
                                            " defines " + std::to_string(found.size()) +
                                            " of " + std::to_string(shape->sources) + " sources");
  }
  if (found.at(0).fidelity != 1.0) {
    throw Error(ErrorKind::kParseError, "ground-truth source must have fidelity 1.0");
  }

  MultiFidelityProblem problem;
  problem.name = std::string(name);
  problem.d = d;
  problem.domain.bounds.assign(d, shape->bounds);
  for (auto& [index, source] : found) {
    std::shared_ptr<const Expression> expr = source.expression;
    problem.sources.push_back([expr](std::span<const double> x) { return expr->evaluate(x); });
    problem.fidelities.push_back(source.fidelity);
    problem.costs.push_back(source.cost);
  }
  problem.optimum_value = locate_minimum(problem.sources.front(), problem.domain);
  return problem;
}

}  // namespace w2bgp
