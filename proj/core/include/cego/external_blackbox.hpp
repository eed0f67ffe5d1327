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

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include "cego/problem.hpp"

namespace cego {

struct ExternalCommand {
  std::vector<std::string> argv;  // argv[0] is resolved through PATH
  std::chrono::milliseconds timeout{30000};
};

// Line protocol over a child's stdin/stdout. Each request is one line
//   {"theta": [x_1, ..., x_n]}
// answered by one line
//   {"objective": J, "constraints": [g_1, ..., g_N]}
// The child is started on the first evaluation and kept alive. Any failure
// (timeout, malformed reply, child exit) terminates it and throws; the next
// evaluation starts a fresh child.
class ExternalBlackBox : public Problem {
 public:
  ExternalBlackBox(std::string name, Domain domain, std::size_t n_constraints, ExternalCommand command,
                   std::vector<double> noise_std = {0.0});
  ~ExternalBlackBox() override;

  ExternalBlackBox(const ExternalBlackBox&) = delete;
  ExternalBlackBox& operator=(const ExternalBlackBox&) = delete;

  bool is_pure() const override { return false; }
  Evaluation evaluate(const ParameterVector& theta) override;

  bool running() const { return pid_ > 0; }

 private:
  void spawn();
  void terminate();
  std::string read_line();

  ExternalCommand command_;
  int pid_ = -1;
  int fd_ = -1;
  std::string buffer_;
};

// Request/response codecs, exposed for tests and for writing compatible children.
std::string encode_blackbox_request(const ParameterVector& theta);
Evaluation decode_blackbox_response(const std::string& line, std::size_t n_constraints);

}  // namespace cego
