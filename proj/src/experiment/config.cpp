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
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "w2bgp/error.hpp"
#include "w2bgp/experiment.hpp"

namespace w2bgp {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> items;
  while (!value.empty()) {
    const std::size_t comma = value.find(',');
    const std::string_view item = trim(value.substr(0, comma));
    if (!item.empty()) items.push_back(item);
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return items;
}

class LineContext {
 public:
  LineContext(const std::string& origin, std::size_t line, std::string field)
      : origin_(origin), line_(line), field_(std::move(field)) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::kConfigError,
                origin_ + ":" + std::to_string(line_) + ": " + field_ + ": " + what);
  }

  template <typename T>
  T number(std::string_view text) const {
    T value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
      fail("expected a number, got '" + std::string(text) + "'");
    }
    return value;
  }

  std::size_t positive_count(std::string_view text) const {
    const auto v = number<std::size_t>(text);
    if (v == 0) fail("must be >= 1");
    return v;
  }

  double positive_real(std::string_view text) const {
    const auto v = number<double>(text);
    if (!(v > 0.0)) fail("must be > 0");
    return v;
  }

 private:
  const std::string& origin_;
  std::size_t line_;
  std::string field_;
};

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::kConfigError, field + ": " + what);
}

}  // namespace

std::string_view task_name(TaskKind task) {
  switch (task) {
    case TaskKind::kFederated: return "federated";
    case TaskKind::kBatch: return "batch";
    case TaskKind::kMfbo: return "mfbo";
  }
  return "unknown";
}

std::optional<TaskKind> parse_task(std::string_view name) {
  for (TaskKind t : {TaskKind::kFederated, TaskKind::kBatch, TaskKind::kMfbo}) {
    if (task_name(t) == name) return t;
  }
  return std::nullopt;
}

ExperimentConfig parse_config(std::string_view text, const std::string& origin) {
  ExperimentConfig cfg;
  std::string section;
  bool have_task = false;
  bool have_problem = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') LineContext(origin, line_no, "section").fail("missing ']'");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "experiment" && section != "bo" && section != "mfbo") {
        LineContext(origin, line_no, "section").fail("unknown section [" + section + "]");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      LineContext(origin, line_no, "line").fail("expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty()) LineContext(origin, line_no, key).fail("key outside a section");
    const LineContext ctx(origin, line_no, section + "." + key);
    if (value.empty()) ctx.fail("empty value");
    TaskConfig& tc = cfg.task_config;

    if (section == "experiment") {
      if (key == "task") {
        const auto task = parse_task(value);
        if (!task) ctx.fail("unknown task '" + std::string(value) + "'");
        cfg.task = *task;
        have_task = true;
      } else if (key == "problem") {
        cfg.problem = std::string(value);
        have_problem = true;
      } else if (key == "d") {
        cfg.d = ctx.positive_count(value);
      } else if (key == "schemas") {
        cfg.schemas.clear();
        for (std::string_view item : split_list(value)) {
          const auto schema = parse_schema(item);
          if (!schema) ctx.fail("unknown schema '" + std::string(item) + "'");
          cfg.schemas.push_back(*schema);
        }
      } else if (key == "replicates") {
        cfg.replicates = ctx.positive_count(value);
      } else if (key == "seed") {
        cfg.base_seed = ctx.number<std::uint64_t>(value);
      } else if (key == "output") {
        cfg.output_dir = std::string(value);
      } else {
        ctx.fail("unknown key");
      }
    } else if (section == "bo") {
      if (key == "n0") {
        tc.n0 = ctx.positive_count(value);
      } else if (key == "budget") {
        tc.budget = ctx.positive_count(value);
      } else if (key == "beta") {
        tc.beta = ctx.number<double>(value);
        if (!(tc.beta >= 0.0)) ctx.fail("must be >= 0");
      } else if (key == "kernels") {
        tc.kernels.clear();
        for (std::string_view item : split_list(value)) {
          const auto kind = parse_kernel_kind(item);
          if (!kind) ctx.fail("unknown kernel '" + std::string(item) + "'");
          tc.kernels.push_back(*kind);
        }
        if (tc.kernels.empty()) ctx.fail("no kernels listed");
      } else if (key == "dedup_tol") {
        tc.batch_dedup_tol = ctx.positive_real(value);
      } else if (key == "noise") {
        tc.noise_variance = ctx.positive_real(value);
      } else if (key == "acquisition_budget") {
        tc.acquisition_budget = ctx.positive_count(value);
      } else {
        ctx.fail("unknown key");
      }
    } else {
      if (key == "costs") {
        tc.costs.clear();
        for (std::string_view item : split_list(value)) tc.costs.push_back(ctx.positive_real(item));
      } else if (key == "epsilon") {
        tc.mf_epsilon = ctx.positive_real(value);
      } else if (key == "definitions") {
        cfg.mf_definitions = std::string(value);
      } else {
        ctx.fail("unknown key");
      }
    }
  }
  if (!have_task) throw Error(ErrorKind::kConfigError, origin + ": experiment.task: missing");
  if (!have_problem) {
    throw Error(ErrorKind::kConfigError, origin + ": experiment.problem: missing");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kConfigError, path.string() + ": cannot open");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

std::vector<Schema> effective_schemas(const ExperimentConfig& cfg) {
  if (!cfg.schemas.empty()) return cfg.schemas;
  if (cfg.task == TaskKind::kMfbo) return {Schema::kFidelity, Schema::kRescaled, Schema::kEqual};
  return {Schema::kSelfConfident, Schema::kEqual, Schema::kUncooperative};
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.task == TaskKind::kMfbo) {
    const auto& names = mf_problem_names();
    if (std::find(names.begin(), names.end(), cfg.problem) == names.end()) {
      field_error("experiment.problem", "unknown multi-fidelity problem '" + cfg.problem + "'");
    }
    try {
      const auto path =
          cfg.mf_definitions.empty() ? default_mf_definitions_path() : cfg.mf_definitions;
      const MultiFidelityProblem problem = make_mf_problem(cfg.problem, cfg.d, path);
      if (!cfg.task_config.costs.empty() &&
          cfg.task_config.costs.size() != problem.sources.size()) {
        field_error("mfbo.costs", "expected " + std::to_string(problem.sources.size()) +
                                      " costs");
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kConfigError) throw;
      field_error(e.kind() == ErrorKind::kInvalidDimension ? "experiment.d" : "mfbo.definitions",
                  e.what());
    }
  } else {
    const auto& names = problem_names();
    if (std::find(names.begin(), names.end(), cfg.problem) == names.end()) {
      field_error("experiment.problem", "unknown problem '" + cfg.problem + "'");
    }
    const std::size_t fixed = fixed_dimension(cfg.problem);
    if (fixed != 0 && fixed != cfg.d) {
      field_error("experiment.d", cfg.problem + " is defined for d=" + std::to_string(fixed));
    }
  }
  for (Schema s : effective_schemas(cfg)) {
    const bool mf_schema = s == Schema::kFidelity || s == Schema::kRescaled;
    const bool allowed = cfg.task == TaskKind::kMfbo ? (mf_schema || s == Schema::kEqual)
                                                     : !mf_schema;
    if (!allowed) {
      field_error("experiment.schemas", std::string(schema_name(s)) + " does not apply to " +
                                            std::string(task_name(cfg.task)));
    }
  }
  const TaskConfig& tc = cfg.task_config;
  const std::size_t n0 = resolved_n0(tc, cfg.d);
  const std::size_t budget = tc.budget != 0 ? tc.budget : default_budget(cfg.d);
  if (budget < n0) {
    field_error("bo.budget", std::to_string(budget) + " is below n0 = " + std::to_string(n0));
  }
}

}  // namespace w2bgp
