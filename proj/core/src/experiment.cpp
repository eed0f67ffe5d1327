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

#include "cego/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cego/artificial.hpp"
#include "cego/errors.hpp"
#include "cego/external_blackbox.hpp"
#include "cego/williams_otto.hpp"

namespace cego {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kCodeVersion = "0.1.0";
constexpr const char* kHeaderFile = "run_header.json";

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw InvalidArgument("config: " + where + " must be an object");
  for (const auto& item : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; })) {
      throw InvalidArgument("config: unknown key '" + item.key() + "' in " + where);
    }
  }
}

double parse_extended_number(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  }
  throw InvalidArgument("config: " + what + " must be a number or \"inf\"");
}

json extended_number(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  return v;
}

ProblemSpec parse_problem(const json& j) {
  check_keys(j, {"name", "g_thr", "noise_std", "grid", "command", "timeout_ms", "lower", "upper", "n_constraints"},
             "problem");
  ProblemSpec p;
  p.name = j.value("name", p.name);
  p.g_thr = j.value("g_thr", p.g_thr);
  if (j.contains("noise_std")) p.noise_std = j["noise_std"].get<double>();
  p.grid = j.value("grid", p.grid);
  p.command = j.value("command", p.command);
  p.timeout_ms = j.value("timeout_ms", p.timeout_ms);
  p.lower = j.value("lower", p.lower);
  p.upper = j.value("upper", p.upper);
  p.n_constraints = j.value("n_constraints", p.n_constraints);
  return p;
}

KernelSpec parse_kernel(const json& j) {
  check_keys(j, {"family", "lengthscales", "output_scale", "noise_variance"}, "kernel");
  KernelSpec k;
  if (j.contains("family")) k.family = kernel_family_from_string(j["family"].get<std::string>());
  k.lengthscales = j.value("lengthscales", k.lengthscales);
  k.output_scale = j.value("output_scale", k.output_scale);
  k.noise_variance = j.value("noise_variance", k.noise_variance);
  return k;
}

PolicySpec parse_policy(const json& j) {
  check_keys(j, {"name", "label", "beta", "rho", "eta", "lipschitz", "safe_seeds", "cei_incumbent_threshold"},
             "policy");
  PolicySpec p;
  p.kind = policy_from_string(j.at("name").get<std::string>());
  p.label = j.value("label", std::string(to_string(p.kind)));
  if (j.contains("beta")) {
    const auto& b = j["beta"];
    check_keys(b, {"mode", "value", "delta"}, "beta");
    if (b.contains("mode")) p.beta.mode = beta_mode_from_string(b["mode"].get<std::string>());
    p.beta.value = b.value("value", p.beta.value);
    p.beta.delta = b.value("delta", p.beta.delta);
  }
  p.rho = j.value("rho", p.rho);
  p.eta = j.value("eta", p.eta);
  if (j.contains("lipschitz")) p.lipschitz = parse_extended_number(j["lipschitz"], "lipschitz");
  p.safe_seeds = j.value("safe_seeds", p.safe_seeds);
  p.cei_incumbent_threshold = j.value("cei_incumbent_threshold", p.cei_incumbent_threshold);
  return p;
}

json to_json(const RunConfig& c) {
  json j;
  json problem;
  problem["name"] = c.problem.name;
  problem["g_thr"] = c.problem.g_thr;
  if (c.problem.noise_std) problem["noise_std"] = *c.problem.noise_std;
  problem["grid"] = c.problem.grid;
  if (c.problem.name == "external") {
    problem["command"] = c.problem.command;
    problem["timeout_ms"] = c.problem.timeout_ms;
    problem["lower"] = c.problem.lower;
    problem["upper"] = c.problem.upper;
    problem["n_constraints"] = c.problem.n_constraints;
  }
  j["problem"] = problem;
  json kernels = json::array();
  for (const auto& k : c.kernels) {
    kernels.push_back({{"family", std::string(to_string(k.family))},
                       {"lengthscales", k.lengthscales},
                       {"output_scale", k.output_scale},
                       {"noise_variance", k.noise_variance}});
  }
  j["kernels"] = kernels;
  j["fit_hyperparameters"] = c.fit_hyperparameters;
  json policies = json::array();
  for (const auto& p : c.policies) {
    policies.push_back({{"name", std::string(to_string(p.kind))},
                        {"label", p.label},
                        {"beta", {{"mode", std::string(to_string(p.beta.mode))},
                                  {"value", p.beta.value},
                                  {"delta", p.beta.delta}}},
                        {"rho", p.rho},
                        {"eta", p.eta},
                        {"lipschitz", extended_number(p.lipschitz)},
                        {"safe_seeds", p.safe_seeds},
                        {"cei_incumbent_threshold", p.cei_incumbent_threshold}});
  }
  j["policies"] = policies;
  j["budget"] = c.budget;
  j["seeds"] = c.seeds;
  json initial;
  initial["feasible_start"] = c.initial.feasible_start;
  if (c.initial.random_points) initial["random_points"] = *c.initial.random_points;
  j["initial_design"] = initial;
  j["output_dir"] = c.output_dir.string();
  if (c.reference) j["reference"] = c.reference->string();
  return j;
}

std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

std::mt19937_64 stream(std::uint64_t seed, std::uint32_t tag) {
  std::seed_seq seq{lo32(seed), hi32(seed), tag};
  return std::mt19937_64(seq);
}

constexpr std::uint32_t kStartStream = 0x53545254u;   // feasible start
constexpr std::uint32_t kDesignStream = 0x4453474eu;  // random initial points

std::size_t default_optimum_resolution(const std::string& name) {
  if (name == "artificial") return 2000;
  if (name == "williams_otto") return 400;
  return 200;
}

std::vector<GpModel> build_models(const RunConfig& config, const Domain& domain, std::size_t outputs) {
  std::vector<GpModel> models;
  for (std::size_t i = 0; i < outputs; ++i) {
    const KernelSpec& spec = config.kernels.size() == 1 ? config.kernels[0] : config.kernels[i];
    Eigen::VectorXd ls(static_cast<Eigen::Index>(domain.dim()));
    for (std::size_t d = 0; d < domain.dim(); ++d) {
      ls[static_cast<Eigen::Index>(d)] =
          spec.lengthscales.empty() ? 0.1 * (domain.upper()[d] - domain.lower()[d]) : spec.lengthscales[d];
    }
    models.emplace_back(Kernel(spec.family, ls, spec.output_scale), spec.noise_variance, i);
  }
  return models;
}

// Refits every output model on its own data once enough points exist.
void refit_models(AlgorithmState& state, const RunConfig& config) {
  if (!config.fit_hyperparameters || state.step < 4) return;
  std::vector<GpModel> refitted;
  for (std::size_t i = 0; i < state.models.size(); ++i) {
    const GpModel& m = state.models[i];
    std::vector<Observation> obs;
    for (Eigen::Index r = 0; r < m.points().rows(); ++r) {
      obs.push_back({m.points().row(r).transpose(), m.values()[r], i});
    }
    const auto fit = fit_hyperparameters(obs, state.domain, HyperparameterGrid::standard(m.kernel().family()));
    GpModel next(fit.kernel, fit.noise_variance, i);
    for (const auto& o : obs) next.add_observation(o);
    refitted.push_back(std::move(next));
  }
  state.models = std::move(refitted);
}

bool needs_default_design(const RunConfig& config, const PolicySpec& policy) {
  return policy.kind == PolicyKind::kCei || config.fit_hyperparameters;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config: not valid JSON: ") + e.what());
  }
  check_keys(j, {"problem", "kernel", "kernels", "fit_hyperparameters", "policies", "budget", "seeds",
                 "initial_design", "output_dir", "reference"},
             "config");
  RunConfig c;
  try {
    if (j.contains("problem")) c.problem = parse_problem(j["problem"]);
    if (j.contains("kernel") && j.contains("kernels")) {
      throw InvalidArgument("config: give either 'kernel' or 'kernels', not both");
    }
    if (j.contains("kernel")) c.kernels = {parse_kernel(j["kernel"])};
    if (j.contains("kernels")) {
      c.kernels.clear();
      for (const auto& k : j["kernels"]) c.kernels.push_back(parse_kernel(k));
    }
    c.fit_hyperparameters = j.value("fit_hyperparameters", false);
    for (const auto& p : j.at("policies")) c.policies.push_back(parse_policy(p));
    c.budget = j.value("budget", c.budget);
    c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("initial_design")) {
      const auto& d = j["initial_design"];
      check_keys(d, {"feasible_start", "random_points"}, "initial_design");
      c.initial.feasible_start = d.value("feasible_start", false);
      if (d.contains("random_points")) c.initial.random_points = d["random_points"].get<std::size_t>();
    }
    if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("reference")) c.reference = j["reference"].get<std::string>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  validate(c);
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("config: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  RunConfig c = parse_run_config(ss.str());
  if (c.reference && c.reference->is_relative()) c.reference = path.parent_path() / *c.reference;
  return c;
}

std::string dump_run_config(const RunConfig& config) { return to_json(config).dump(2); }

void validate(const RunConfig& c) {
  const auto problems = list_problems();
  if (std::find(problems.begin(), problems.end(), c.problem.name) == problems.end()) {
    throw InvalidArgument("config: unknown problem '" + c.problem.name + "'");
  }
  if (c.budget < 1) throw InvalidArgument("config: budget must be >= 1");
  if (c.seeds.empty()) throw InvalidArgument("config: at least one seed required");
  if (std::set<std::uint64_t>(c.seeds.begin(), c.seeds.end()).size() != c.seeds.size()) {
    throw InvalidArgument("config: seeds must be distinct");
  }
  if (c.policies.empty()) throw InvalidArgument("config: at least one policy required");
  std::set<std::string> labels;
  for (const auto& p : c.policies) {
    if (p.label.empty() || p.label.find("__") != std::string::npos || p.label.find('/') != std::string::npos) {
      throw InvalidArgument("config: policy label '" + p.label + "' is not a valid file stem");
    }
    if (!labels.insert(p.label).second) throw InvalidArgument("config: duplicate policy label '" + p.label + "'");
    p.beta.validate();
    if (p.kind == PolicyKind::kSafeOptLite && p.safe_seeds.empty() && !c.initial.feasible_start) {
      throw InvalidArgument("config: safeopt_lite needs safe_seeds or initial_design.feasible_start");
    }
    if (p.kind == PolicyKind::kCei && !c.initial.feasible_start && c.initial.random_points &&
        *c.initial.random_points == 0) {
      throw InvalidArgument("config: cei needs at least one initial design point");
    }
  }
  const std::size_t outputs = c.problem.name == "external"     ? c.problem.n_constraints + 1
                              : c.problem.name == "williams_otto" ? 3
                                                                  : 2;
  if (c.kernels.size() != 1 && c.kernels.size() != outputs) {
    throw InvalidArgument("config: give one kernel or one per output (" + std::to_string(outputs) + ")");
  }
  if (c.problem.name == "external" && c.initial.feasible_start) {
    throw InvalidArgument("config: feasible_start needs a pure problem; external black boxes are not");
  }
}

std::vector<std::string> list_problems() {
  return {"artificial", "artificial_infeasible", "williams_otto", "external"};
}

std::unique_ptr<Problem> make_problem(const ProblemSpec& spec) {
  if (spec.name == "artificial") {
    return std::make_unique<ArtificialProblem>(spec.g_thr, spec.grid, spec.noise_std.value_or(0.01));
  }
  if (spec.name == "artificial_infeasible") {
    return std::make_unique<ArtificialInfeasibleProblem>(spec.grid, spec.noise_std.value_or(0.01));
  }
  if (spec.name == "williams_otto") {
    return std::make_unique<WilliamsOttoProblem>(spec.grid, spec.noise_std.value_or(0.0));
  }
  if (spec.name == "external") {
    std::vector<std::size_t> counts(spec.lower.size(), spec.grid);
    Domain domain(spec.lower, spec.upper, counts);
    ExternalCommand cmd{spec.command, std::chrono::milliseconds(spec.timeout_ms)};
    return std::make_unique<ExternalBlackBox>("external", std::move(domain), spec.n_constraints, std::move(cmd),
                                              std::vector<double>{spec.noise_std.value_or(0.0)});
  }
  throw InvalidArgument("unknown problem '" + spec.name + "'");
}

ParameterVector feasible_start_sampler(Problem& problem, std::uint64_t seed, std::size_t max_draws) {
  auto rng = stream(seed, kStartStream);
  std::uniform_int_distribution<std::size_t> pick(0, problem.domain().size() - 1);
  for (std::size_t draw = 0; draw < max_draws; ++draw) {
    ParameterVector theta = problem.domain().point(pick(rng));
    if (problem.feasible(problem.evaluate(theta))) return theta;
  }
  throw Error("feasible start: no feasible lattice point in " + std::to_string(max_draws) + " draws on '" +
              problem.name() + "'");
}

ReferenceData resolve_reference(const RunConfig& config) {
  if (config.reference) return read_reference(*config.reference);
  auto problem = make_problem(config.problem);
  ReferenceData ref;
  ref.problem = problem->name();
  if (config.problem.name == "artificial") ref.g_thr = config.problem.g_thr;
  ref.normalizer_grid = config.problem.grid;
  if (!problem->is_pure()) return ref;
  try {
    ref.optimum = grid_constrained_optimum(*problem, default_optimum_resolution(config.problem.name));
  } catch (const Error&) {
    // Infeasible problems have no reference optimum.
  }
  ref.sigmas = sample_normalizers(*problem);
  return ref;
}

std::vector<ParameterVector> initial_design(const RunConfig& config, const PolicySpec& policy, Problem& problem,
                                            std::uint64_t seed) {
  const Domain& domain = problem.domain();
  std::vector<ParameterVector> points;
  if (policy.kind == PolicyKind::kSafeOptLite) {
    if (!policy.safe_seeds.empty()) {
      for (const auto& s : policy.safe_seeds) {
        const ParameterVector theta = Eigen::Map<const Eigen::VectorXd>(s.data(), static_cast<Eigen::Index>(s.size()));
        points.push_back(domain.point(domain.nearest_index(theta)));
      }
    } else {
      points.push_back(feasible_start_sampler(problem, seed));
    }
    return points;
  }
  if (config.initial.feasible_start) points.push_back(feasible_start_sampler(problem, seed));
  const std::size_t extra = config.initial.random_points.value_or(needs_default_design(config, policy) ? 3 : 0);
  auto rng = stream(seed, kDesignStream);
  std::uniform_int_distribution<std::size_t> pick(0, domain.size() - 1);
  for (std::size_t k = 0; k < extra; ++k) points.push_back(domain.point(pick(rng)));
  return points;
}

std::string log_file_name(const std::string& label, std::uint64_t seed) {
  return label + "__seed" + std::to_string(seed) + ".jsonl";
}

std::filesystem::path effective_output_dir(const RunConfig& config) {
  if (const char* env = std::getenv(kLogDirEnv); env && *env) return env;
  return config.output_dir;
}

ReplicationResult run_replication(const RunConfig& config, const PolicySpec& policy, std::uint64_t seed,
                                  const std::filesystem::path& log_path) {
  ReplicationResult result;
  result.label = policy.label;
  result.seed = seed;
  result.log_path = log_path;
  try {
    auto problem = make_problem(config.problem);
    const Domain& domain = problem->domain();

    std::vector<RunRecord> existing;
    if (std::filesystem::exists(log_path)) {
      std::size_t complete = 0;
      existing = read_log(log_path, &complete);
      std::filesystem::resize_file(log_path, complete);
    } else if (log_path.has_parent_path()) {
      std::filesystem::create_directories(log_path.parent_path());
    }

    const auto design = initial_design(config, policy, *problem, seed);

    PolicyParams params;
    params.rho = policy.rho;
    params.eta = policy.eta;
    params.lipschitz = policy.lipschitz;
    params.seed = seed;
    params.cei_incumbent_threshold = policy.cei_incumbent_threshold;
    if (policy.kind == PolicyKind::kSafeOptLite) {
      for (const auto& p : design) params.safe_seeds.push_back(domain.nearest_index(p));
    }
    AlgorithmState state = make_state(policy.kind, domain, build_models(config, domain, problem->n_outputs()),
                                      policy.beta, params);
    NoisyEvaluator evaluator(*problem, seed);

    std::size_t design_used = 0;
    auto next_decision = [&]() -> Decision {
      if (design_used < design.size()) return Decision::sample(domain, domain.nearest_index(design[design_used++]));
      refit_models(state, config);
      return propose(state);
    };

    for (const RunRecord& r : existing) {
      const Decision d = next_decision();
      if (!r.is_sample()) {
        if (!d.is_infeasible()) throw Error("resume: log declares infeasibility where the policy does not");
        result.records.push_back(r);
        result.declared_infeasible = true;
        result.resumed_steps = result.records.size();
        return result;
      }
      const std::vector<double> theta(d.theta.data(), d.theta.data() + d.theta.size());
      if (d.is_infeasible() || theta != r.theta || r.y.size() != problem->n_outputs()) {
        throw Error("resume: " + log_path.string() + " diverges from the configuration at step " +
                    std::to_string(r.t));
      }
      evaluator.skip(1);
      observe(state, d.theta, r.y);
      result.records.push_back(r);
    }
    result.resumed_steps = result.records.size();

    std::filesystem::path timing = log_path;
    timing += ".timing.jsonl";
    std::ofstream timing_out(timing, std::ios::app);

    while (result.records.size() < config.budget) {
      const auto started = std::chrono::steady_clock::now();
      const Decision d = next_decision();
      RunRecord rec;
      rec.t = result.records.size() + 1;
      if (d.is_infeasible()) {
        rec.decision = Decision::Kind::kInfeasible;
        append_record(log_path, rec);
        result.records.push_back(rec);
        result.declared_infeasible = true;
        break;
      }
      const Measurement m = evaluator.measure(d.theta);
      rec.theta.assign(d.theta.data(), d.theta.data() + d.theta.size());
      rec.y = m.y;
      rec.truth = m.truth;
      append_record(log_path, rec);
      observe(state, d.theta, m.y);
      result.records.push_back(rec);
      const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
      timing_out << "{\"t\":" << rec.t << ",\"wall_ms\":" << elapsed.count() << "}\n";
    }
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  return result;
}

ExperimentResult run_experiment(const RunConfig& config, std::size_t jobs) {
  validate(config);
  ExperimentResult out;
  out.output_dir = effective_output_dir(config);
  std::filesystem::create_directories(out.output_dir);
  out.reference = resolve_reference(config);

  {
    json header;
    header["code_version"] = kCodeVersion;
    header["config"] = to_json(config);
    header["config"].erase("output_dir");  // where logs live is not part of the run
    header["reference"] = json::parse(encode_reference(out.reference));
    header["initial_design"] =
        "feasible start (if enabled) then uniform lattice points from an independent seeded stream; "
        "safeopt_lite starts from its safe seeds only";
    header["noise"] = "seeded Gaussian per output, stream independent of the start/design streams";
    header["metric_values"] = make_problem(config.problem)->is_pure() ? "noiseless" : "measured";
    std::ofstream h(out.output_dir / kHeaderFile, std::ios::binary);
    h << header.dump(2) << '\n';
  }

  struct Task {
    const PolicySpec* policy;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const auto& p : config.policies) {
    for (auto s : config.seeds) tasks.push_back({&p, s});
  }
  out.replications.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& task = tasks[i];
      out.replications[i] = run_replication(config, *task.policy, task.seed,
                                            out.output_dir / log_file_name(task.policy->label, task.seed));
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, tasks.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

MetricKind metric_from_string(const std::string& name) {
  if (name == "constrained_regret") return MetricKind::kConstrainedRegret;
  if (name == "normalized") return MetricKind::kNormalized;
  if (name == "best_so_far") return MetricKind::kBestSoFar;
  throw InvalidArgument("unknown metric '" + name + "'");
}

std::vector<double> metric_series(std::span<const RunRecord> records, MetricKind metric,
                                  const ReferenceData& reference) {
  std::vector<double> values;
  for (const auto& r : records) {
    if (!r.is_sample()) continue;
    switch (metric) {
      case MetricKind::kConstrainedRegret:
        if (!reference.optimum) throw InvalidArgument("metrics: constrained regret needs a reference optimum");
        values.push_back(instantaneous_regret(r, reference.optimum->value));
        break;
      case MetricKind::kNormalized:
        if (!reference.optimum || !reference.sigmas) {
          throw InvalidArgument("metrics: normalized regret needs a reference optimum and normalizers");
        }
        values.push_back(normalized_regret_violation(r, reference.optimum->value, *reference.sigmas,
                                                     NormalizedMode::kRegret));
        break;
      case MetricKind::kBestSoFar:
        if (reference.sigmas) {
          values.push_back(normalized_regret_violation(r, 0.0, *reference.sigmas, NormalizedMode::kAbsolute));
        } else {
          // no normalizers (external problems): unit scales
          const Normalizers unit{1.0, std::vector<double>(metric_values(r).size() - 1, 1.0)};
          values.push_back(normalized_regret_violation(r, 0.0, unit, NormalizedMode::kAbsolute));
        }
        break;
    }
  }
  return best_so_far_series(values);
}

LoadedLogs load_logs(const std::filesystem::path& dir) {
  LoadedLogs logs;
  const auto header_path = dir / kHeaderFile;
  std::ifstream h(header_path, std::ios::binary);
  if (!h) throw InvalidArgument("metrics: missing " + header_path.string());
  try {
    const auto header = json::parse(h);
    logs.reference = decode_reference(header.at("reference").dump());
  } catch (const json::exception& e) {
    throw InvalidArgument("metrics: bad run header: " + std::string(e.what()));
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && name.ends_with(".jsonl") && !name.ends_with(".timing.jsonl")) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const auto name = f.filename().string();
    const auto cut = name.find("__seed");
    if (cut == std::string::npos) continue;
    logs.by_label[name.substr(0, cut)].push_back(read_log(f));
  }
  return logs;
}

std::string emit_metrics(const LoadedLogs& logs, MetricKind metric) {
  struct Column {
    std::vector<double> mean;
    std::vector<double> stddev;
  };
  std::map<std::string, std::vector<std::vector<double>>> series;
  std::size_t rows = 0;
  for (const auto& [label, runs] : logs.by_label) {
    auto& mine = series[label];
    for (const auto& records : runs) {
      auto s = metric_series(records, metric, logs.reference);
      if (s.empty()) continue;
      rows = std::max(rows, s.size());
      mine.push_back(std::move(s));
    }
  }
  std::map<std::string, Column> columns;
  for (auto& [label, runs] : series) {
    Column col;
    if (runs.empty()) {
      columns[label] = std::move(col);
      continue;
    }
    for (auto& s : runs) s.resize(rows, s.back());
    const double n = static_cast<double>(runs.size());
    for (std::size_t k = 0; k < rows; ++k) {
      double sum = 0.0;
      for (const auto& s : runs) sum += s[k];
      const double mean = sum / n;
      double ss = 0.0;
      for (const auto& s : runs) ss += (s[k] - mean) * (s[k] - mean);
      col.mean.push_back(mean);
      col.stddev.push_back(runs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0);
    }
    columns[label] = std::move(col);
  }

  bool measured = false;
  for (const auto& [label, runs] : logs.by_label) {
    for (const auto& records : runs) measured = measured || uses_measured_values(records);
  }

  std::ostringstream csv;
  if (measured) csv << "# values: measured (at least one log has no noiseless truth)\n";
  csv << "step";
  for (const auto& [label, col] : columns) csv << ',' << label << "_mean," << label << "_std";
  csv << '\n';
  for (std::size_t k = 0; k < rows; ++k) {
    csv << (k + 1);
    for (const auto& [label, col] : columns) {
      if (k < col.mean.size()) {
        csv << ',' << format_double(col.mean[k]) << ',' << format_double(col.stddev[k]);
      } else {
        csv << ",,";
      }
    }
    csv << '\n';
  }
  return csv.str();
}

}  // namespace cego
