// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cego/errors.hpp"
#include "cego/experiment.hpp"
#include "cego/reference.hpp"

namespace {

int cmd_run(const std::string& config_path, std::size_t jobs) {
  const cego::RunConfig config = cego::load_run_config(config_path);
  const auto result = cego::run_experiment(config, jobs);
  int failures = 0;
  for (const auto& rep : result.replications) {
    if (rep.error) {
      ++failures;
      std::cerr << "replication " << rep.label << " seed " << rep.seed << " failed: " << *rep.error << '\n';
      continue;
    }
    std::cout << rep.log_path.string() << ": " << rep.records.size() << " records";
    if (rep.resumed_steps > 0) std::cout << " (" << rep.resumed_steps << " resumed)";
    if (rep.declared_infeasible) std::cout << ", infeasible";
    std::cout << '\n';
  }
  return failures == 0 ? 0 : 3;
}

int cmd_metrics(const std::string& dir, const std::string& metric, const std::string& out) {
  const auto logs = cego::load_logs(dir);
  const std::string csv = cego::emit_metrics(logs, cego::metric_from_string(metric));
  if (out.empty() || out == "-") {
    std::cout << csv;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw cego::InvalidArgument("cannot write " + out);
    f << csv;
  }
  return 0;
}

int cmd_oracle(cego::ProblemSpec spec, std::size_t resolution, std::size_t normalizer_grid,
               const std::string& out) {
  spec.grid = normalizer_grid;
  auto problem = cego::make_problem(spec);
  if (!problem->is_pure()) throw cego::InvalidArgument("oracle: problem '" + spec.name + "' is not pure");
  cego::ReferenceData ref;
  ref.problem = problem->name();
  if (spec.name == "artificial") ref.g_thr = spec.g_thr;
  ref.normalizer_grid = normalizer_grid;
  try {
    ref.optimum = cego::grid_constrained_optimum(*problem, resolution);
  } catch (const cego::InvalidArgument&) {
    throw;
  } catch (const cego::Error& e) {
    std::cerr << "oracle: " << e.what() << "; no optimum recorded\n";
  }
  ref.sigmas = cego::sample_normalizers(*problem);
  if (out.empty() || out == "-") {
    std::cout << cego::encode_reference(ref) << '\n';
  } else {
    cego::write_reference(out, ref);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained grid-based GP optimization experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run (or resume) every policy x seed replication of a config");
  std::string config_path;
  std::size_t jobs = 1;
  run->add_option("--config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--jobs", jobs, "replications run in parallel")->check(CLI::PositiveNumber);

  auto* metrics = app.add_subcommand("metrics", "aggregate logs into a per-step CSV table");
  std::string logs_dir;
  std::string metric = "constrained_regret";
  std::string metrics_out;
  metrics->add_option("--logs", logs_dir, "directory written by `run`")->required()->check(CLI::ExistingDirectory);
  metrics->add_option("--metric", metric, "constrained_regret | normalized | best_so_far")
      ->check(CLI::IsMember({"constrained_regret", "normalized", "best_so_far"}));
  metrics->add_option("--out", metrics_out, "CSV path ('-' for stdout)");

  auto* oracle = app.add_subcommand("oracle", "brute-force J* and normalizers into a reference file");
  cego::ProblemSpec spec;
  std::size_t resolution = 2000;
  std::size_t normalizer_grid = 100;
  std::string oracle_out;
  oracle->add_option("--problem", spec.name, "problem name")->required();
  oracle->add_option("--grid", resolution, "lattice points per dimension for J*")->check(CLI::Range(2, 100000));
  oracle->add_option("--g-thr", spec.g_thr, "artificial constraint threshold");
  oracle->add_option("--normalizer-grid", normalizer_grid, "lattice the normalizer samples come from")
      ->check(CLI::Range(2, 100000));
  oracle->add_option("--out", oracle_out, "reference JSON path ('-' for stdout)");

  auto* list = app.add_subcommand("list-problems", "print the built-in problem names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits 0, usage errors 2
  }

  try {
    if (run->parsed()) return cmd_run(config_path, jobs);
    if (metrics->parsed()) return cmd_metrics(logs_dir, metric, metrics_out);
    if (oracle->parsed()) return cmd_oracle(spec, resolution, normalizer_grid, oracle_out);
    if (list->parsed()) {
      for (const auto& name : cego::list_problems()) std::cout << name << '\n';
      return 0;
    }
  } catch (const cego::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
