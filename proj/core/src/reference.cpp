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

#include "cego/reference.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cego/errors.hpp"

namespace cego {

using ordered_json = nlohmann::ordered_json;

KnownOptimum grid_constrained_optimum(Problem& problem, std::size_t resolution) {
  const Domain& box = problem.domain();
  const Domain dense = Domain::uniform(box.lower(), box.upper(), resolution);
  KnownOptimum best;
  best.value = std::numeric_limits<double>::infinity();
  best.grid_resolution = resolution;
  bool found = false;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    const ParameterVector theta = dense.point(i);
    const Evaluation e = problem.evaluate(theta);
    if (problem.feasible(e) && e.objective < best.value) {
      best.value = e.objective;
      best.argmin.assign(theta.data(), theta.data() + theta.size());
      found = true;
    }
  }
  if (!found) {
    throw Error("grid optimum: no feasible point on the " + std::to_string(resolution) + "-per-dimension lattice of '" +
                problem.name() + "'");
  }
  best.provenance = "dense lattice enumeration, " + std::to_string(resolution) + " points per dimension";
  return best;
}

Normalizers sample_normalizers(Problem& problem, std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw InvalidArgument("normalizers: need at least two samples");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x5349474du};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::size_t> pick(0, problem.domain().size() - 1);

  const std::size_t k = problem.n_outputs();
  std::vector<double> mean(k, 0.0);
  std::vector<double> m2(k, 0.0);
  for (std::size_t n = 1; n <= samples; ++n) {
    const auto outputs = problem.evaluate(problem.domain().point(pick(rng))).outputs();
    for (std::size_t i = 0; i < k; ++i) {
      const double delta = outputs[i] - mean[i];
      mean[i] += delta / static_cast<double>(n);
      m2[i] += delta * (outputs[i] - mean[i]);
    }
  }
  Normalizers out;
  const double denom = static_cast<double>(samples - 1);
  out.objective = std::sqrt(m2[0] / denom);
  for (std::size_t i = 1; i < k; ++i) out.constraints.push_back(std::sqrt(m2[i] / denom));
  return out;
}

std::string encode_reference(const ReferenceData& ref) {
  ordered_json j;
  j["problem"] = ref.problem;
  j["g_thr"] = ref.g_thr ? ordered_json(*ref.g_thr) : ordered_json(nullptr);
  if (ref.optimum) {
    j["j_star"] = ref.optimum->value;
    j["j_star_argmin"] = ref.optimum->argmin;
    j["j_star_grid"] = ref.optimum->grid_resolution;
    j["j_star_provenance"] = ref.optimum->provenance;
  } else {
    j["j_star"] = nullptr;
  }
  if (ref.sigmas) {
    j["sigmas"] = {{"objective", ref.sigmas->objective}, {"constraints", ref.sigmas->constraints}};
  } else {
    j["sigmas"] = nullptr;
  }
  j["normalizer_samples"] = ref.normalizer_samples;
  j["normalizer_seed"] = ref.normalizer_seed;
  j["normalizer_grid"] = ref.normalizer_grid;
  return j.dump(2);
}

ReferenceData decode_reference(const std::string& text) {
  try {
    const auto j = ordered_json::parse(text);
    ReferenceData ref;
    ref.problem = j.at("problem").get<std::string>();
    if (j.contains("g_thr") && !j["g_thr"].is_null()) ref.g_thr = j["g_thr"].get<double>();
    if (j.contains("j_star") && !j["j_star"].is_null()) {
      KnownOptimum opt;
      opt.value = j["j_star"].get<double>();
      opt.argmin = j.value("j_star_argmin", std::vector<double>{});
      opt.grid_resolution = j.value("j_star_grid", std::size_t{0});
      opt.provenance = j.value("j_star_provenance", std::string{});
      ref.optimum = opt;
    }
    if (j.contains("sigmas") && !j["sigmas"].is_null()) {
      Normalizers s;
      s.objective = j["sigmas"].at("objective").get<double>();
      s.constraints = j["sigmas"].at("constraints").get<std::vector<double>>();
      ref.sigmas = s;
    }
    ref.normalizer_samples = j.value("normalizer_samples", kNormalizerSamples);
    ref.normalizer_seed = j.value("normalizer_seed", kNormalizerSeed);
    ref.normalizer_grid = j.value("normalizer_grid", std::size_t{0});
    return ref;
  } catch (const ordered_json::exception& e) {
    throw InvalidArgument(std::string("reference file: ") + e.what());
  }
}

void write_reference(const std::filesystem::path& path, const ReferenceData& ref) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("reference file: cannot write " + path.string());
  out << encode_reference(ref) << '\n';
}

ReferenceData read_reference(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("reference file: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return decode_reference(ss.str());
}

}  // namespace cego
