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

// Command-line front end: run experiments, rebuild summaries and plots.

#include <cstdlib>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "w2bgp/error.hpp"
#include "w2bgp/experiment.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalFailure = 3;

std::filesystem::path default_output(const std::filesystem::path& config) {
  const char* env = std::getenv("W2BGP_OUT_DIR");
  const std::filesystem::path root = env != nullptr && *env != '\0' ? env : "results";
  return root / config.stem();
}

int run_command(const std::filesystem::path& config_path, const std::optional<std::uint64_t>& seed,
                const std::optional<std::size_t>& replicates, const std::string& out,
                std::size_t jobs) {
  w2bgp::ExperimentConfig cfg;
  try {
    cfg = w2bgp::load_config(config_path);
    if (seed) cfg.base_seed = *seed;
    if (replicates) cfg.replicates = *replicates;
    if (!out.empty()) cfg.output_dir = out;
    if (cfg.output_dir.empty()) cfg.output_dir = default_output(config_path);
    w2bgp::validate_config(cfg);
  } catch (const w2bgp::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    const auto failure = w2bgp::run_experiment(cfg, jobs, &std::cerr);
    if (failure) {
      std::cerr << "numerical failure in " << w2bgp::schema_name(failure->schema)
                << " replicate " << failure->replicate << " (seed " << failure->seed
                << "): " << failure->message << '\n';
      return kExitNumericalFailure;
    }
  } catch (const w2bgp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumericalFailure;
  }
  std::cout << "results written to " << cfg.output_dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wasserstein barycenter GP Bayesian optimization experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replicates;
  std::string out;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  CLI::App* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Experiment config")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override the base seed");
  run->add_option("--replicates", replicates, "Override the replicate count")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out, "Output directory (default: $W2BGP_OUT_DIR/<config name>)");
  run->add_option("--jobs", jobs, "Replicates run in parallel")->check(CLI::PositiveNumber);

  std::string dir;
  CLI::App* summarize = app.add_subcommand("summarize", "Rebuild summary.csv from replicate tables");
  summarize->add_option("dir", dir, "Experiment output directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  CLI::App* plot = app.add_subcommand("plot", "Rebuild gap_plot.svg from replicate tables");
  plot->add_option("dir", dir, "Experiment output directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  CLI::App* list = app.add_subcommand("list-problems", "List benchmark problems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (*run) return run_command(config_path, seed, replicates, out, jobs);
    if (*summarize) {
      w2bgp::summarize_directory(dir);
      return 0;
    }
    if (*plot) {
      w2bgp::plot_directory(dir, std::filesystem::path(dir).filename().string());
      return 0;
    }
    if (*list) {
      for (const std::string& name : w2bgp::problem_names()) {
        const std::size_t d = w2bgp::fixed_dimension(name);
        std::cout << name << "\td=" << (d == 0 ? std::string("any") : std::to_string(d)) << '\n';
      }
      for (const std::string& name : w2bgp::mf_problem_names()) {
        std::cout << name << "\tmulti-fidelity\n";
      }
      return 0;
    }
  } catch (const w2bgp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
