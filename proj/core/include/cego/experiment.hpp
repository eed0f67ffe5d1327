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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cego/acquisition.hpp"
#include "cego/hyperparameters.hpp"
#include "cego/kernel.hpp"
#include "cego/metrics.hpp"
#include "cego/problem.hpp"
#include "cego/reference.hpp"
#include "cego/run_log.hpp"

namespace cego {

// Environment variable that overrides RunConfig::output_dir.
inline constexpr const char* kLogDirEnv = "CEGO_LOG_DIR";

struct ProblemSpec {
  std::string name = "artificial";  // artificial | artificial_infeasible | williams_otto | external
  double g_thr = -0.6;
  std::optional<double> noise_std;  // defaults: 0.01 artificial, 0 otherwise
  std::size_t grid = 100;           // lattice points per dimension
  // external only
  std::vector<std::string> command;
  std::int64_t timeout_ms = 30000;
  std::vector<double> lower;
  std::vector<double> upper;
  std::size_t n_constraints = 0;
};

struct KernelSpec {
  KernelFamily family = KernelFamily::kSquaredExponential;
  std::vector<double> lengthscales;  // absolute; empty = 10% of each domain side
  double output_scale = 1.0;
  double noise_variance = 1e-4;
};

struct PolicySpec {
  PolicyKind kind = PolicyKind::kConfig;
  std::string label;  // log/CSV name; defaults to the policy name
  BetaSchedule beta;
  double rho = 1.0;
  double eta = 1.0;
  double lipschitz = 1.0;
  std::vector<std::vector<double>> safe_seeds;  // SafeOptLite; default: the feasible start
  double cei_incumbent_threshold = 0.5;
};

struct InitialDesign {
  bool feasible_start = false;
  // Uniform lattice points evaluated before the policy loop. Default: 3 for
  // CEI or when hyperparameters are fitted, 0 otherwise.
  std::optional<std::size_t> random_points;
};

struct RunConfig {
  ProblemSpec problem;
  std::vector<KernelSpec> kernels{KernelSpec{}};  // one shared spec, or one per output
  bool fit_hyperparameters = false;
  std::vector<PolicySpec> policies;
  std::size_t budget = 30;  // evaluations per replication, initial design included
  std::vector<std::uint64_t> seeds;
  InitialDesign initial;
  std::filesystem::path output_dir = "runs";
  std::optional<std::filesystem::path> reference;  // frozen reference file
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);
std::string dump_run_config(const RunConfig& config);
void validate(const RunConfig& config);

std::vector<std::string> list_problems();
std::unique_ptr<Problem> make_problem(const ProblemSpec& spec);

// Rejection-samples lattice points until every true constraint is <= 0.
// Throws after `max_draws` infeasible draws.
ParameterVector feasible_start_sampler(Problem& problem, std::uint64_t seed,
                                       std::size_t max_draws = 100000);

// Reference values for metrics: the frozen file when configured, otherwise
// computed (J* on a dense lattice for pure problems, normalizers from
// 10^4 lattice samples).
ReferenceData resolve_reference(const RunConfig& config);

// Points evaluated before the policy loop for one replication.
std::vector<ParameterVector> initial_design(const RunConfig& config, const PolicySpec& policy,
                                            Problem& problem, std::uint64_t seed);

struct ReplicationResult {
  std::string label;
  std::uint64_t seed = 0;
  std::filesystem::path log_path;
  std::vector<RunRecord> records;
  bool declared_infeasible = false;
  std::size_t resumed_steps = 0;  // records taken over from an existing log
  std::optional<std::string> error;
};

// Runs (or resumes) one replication and appends to `log_path`. An existing
// log is validated against the config by replaying its decisions; its
// complete prefix is kept byte for byte and the run continues after it.
ReplicationResult run_replication(const RunConfig& config, const PolicySpec& policy, std::uint64_t seed,
                                  const std::filesystem::path& log_path);

struct ExperimentResult {
  std::filesystem::path output_dir;
  ReferenceData reference;
  std::vector<ReplicationResult> replications;
};

// Every (policy, seed) pair, `jobs` replications at a time. Writes
// run_header.json plus one <label>__seed<seed>.jsonl per replication.
ExperimentResult run_experiment(const RunConfig& config, std::size_t jobs = 1);

std::filesystem::path effective_output_dir(const RunConfig& config);
std::string log_file_name(const std::string& label, std::uint64_t seed);

enum class MetricKind { kConstrainedRegret, kNormalized, kBestSoFar };
MetricKind metric_from_string(const std::string& name);

// Per-step metric series of one log (sample records only, in step order):
//   constrained_regret  min over the prefix of [J - J*]^+ + sum [g]^+
//   normalized          best-so-far normalized regret plus violation
//   best_so_far         best-so-far J / s_J + sum [g]^+ / s_g (unit scales
//                       when the reference has no normalizers)
std::vector<double> metric_series(std::span<const RunRecord> records, MetricKind metric,
                                  const ReferenceData& reference);

struct LoadedLogs {
  ReferenceData reference;
  std::map<std::string, std::vector<std::vector<RunRecord>>> by_label;
};

LoadedLogs load_logs(const std::filesystem::path& dir);

// CSV with columns step,<label>_mean,<label>_std,... (labels sorted). Shorter
// series (any label) are carried forward at their last value to the longest; std uses the n - 1
// denominator and is 0 for a single replication. A leading "# values:
// measured" comment line marks tables built from noisy measurements.
std::string emit_metrics(const LoadedLogs& logs, MetricKind metric);

}  // namespace cego
