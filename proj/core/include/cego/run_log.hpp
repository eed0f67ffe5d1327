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
#include <optional>
#include <string>
#include <vector>

#include "cego/acquisition.hpp"

namespace cego {

// One line of a replication log.
struct RunRecord {
  std::size_t t = 0;  // 1-based, contiguous
  Decision::Kind decision = Decision::Kind::kSample;
  std::vector<double> theta;                 // empty for infeasible markers
  std::vector<double> y;                     // measured outputs, objective first
  std::optional<std::vector<double>> truth;  // noiseless outputs when the oracle is pure

  bool is_sample() const { return decision == Decision::Kind::kSample; }
};

// JSONL codec. One object per line with keys in the order
// {"t", "theta", "y", "true", "decision"}.
std::string encode_record(const RunRecord& record);
RunRecord decode_record(const std::string& line);

// Reads every complete, parseable line. A torn final line (no trailing
// newline, or unparseable) is dropped and reported through `complete_bytes`,
// the length of the valid prefix.
std::vector<RunRecord> read_log(const std::filesystem::path& path, std::size_t* complete_bytes = nullptr);

void append_record(const std::filesystem::path& path, const RunRecord& record);

}  // namespace cego
