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

#include "cego/run_log.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cego/errors.hpp"

namespace cego {

using ordered_json = nlohmann::ordered_json;

std::string encode_record(const RunRecord& record) {
  ordered_json j;
  j["t"] = record.t;
  j["theta"] = record.theta;
  j["y"] = record.y;
  if (record.truth) {
    j["true"] = *record.truth;
  } else {
    j["true"] = nullptr;
  }
  j["decision"] = record.is_sample() ? "sample" : "infeasible";
  return j.dump();
}

RunRecord decode_record(const std::string& line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const ordered_json::parse_error& e) {
    throw InvalidArgument(std::string("run log: unparseable record: ") + e.what());
  }
  try {
    RunRecord r;
    r.t = j.at("t").get<std::size_t>();
    r.theta = j.at("theta").get<std::vector<double>>();
    r.y = j.at("y").get<std::vector<double>>();
    if (!j.at("true").is_null()) r.truth = j.at("true").get<std::vector<double>>();
    const auto decision = j.at("decision").get<std::string>();
    if (decision == "sample") {
      r.decision = Decision::Kind::kSample;
    } else if (decision == "infeasible") {
      r.decision = Decision::Kind::kInfeasible;
    } else {
      throw InvalidArgument("run log: unknown decision '" + decision + "'");
    }
    return r;
  } catch (const ordered_json::exception& e) {
    throw InvalidArgument(std::string("run log: malformed record: ") + e.what());
  }
}

std::vector<RunRecord> read_log(const std::filesystem::path& path, std::size_t* complete_bytes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("run log: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();

  std::vector<RunRecord> records;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto newline = text.find('\n', pos);
    if (newline == std::string::npos) break;
    try {
      RunRecord r = decode_record(text.substr(pos, newline - pos));
      if (r.t != records.size() + 1) break;
      records.push_back(std::move(r));
    } catch (const InvalidArgument&) {
      break;
    }
    pos = newline + 1;
  }
  if (complete_bytes) *complete_bytes = pos;
  return records;
}

void append_record(const std::filesystem::path& path, const RunRecord& record) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw InvalidArgument("run log: cannot write " + path.string());
  out << encode_record(record) << '\n';
  out.flush();
  if (!out) throw InvalidArgument("run log: write failed for " + path.string());
}

}  // namespace cego
