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

// Test child for the black-box line protocol.
//   echo     objective = theta[0], constraints = [theta[1]]
//   count    objective = number of requests served so far, constraints = [0]
//   garbage  replies with a non-JSON line
//   sleep    never answers in time
//   exit     exits before answering
//   wrong    replies with two constraints
//   flaky K  echoes K requests, then replies with garbage
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <thread>

#include <json.hpp>

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "echo";
  std::string line;
  long served = 0;
  while (std::getline(std::cin, line)) {
    ++served;
    if (mode == "exit") return 3;
    if (mode == "sleep") std::this_thread::sleep_for(std::chrono::seconds(10));
    if (mode == "garbage" || (mode == "flaky" && served > std::stol(argv[2]))) {
      std::cout << "this is not json" << std::endl;
      continue;
    }
    const auto req = nlohmann::json::parse(line);
    const auto& theta = req.at("theta");
    nlohmann::json resp;
    if (mode == "count") {
      resp["objective"] = served;
      resp["constraints"] = {0.0};
    } else if (mode == "wrong") {
      resp["objective"] = 0.0;
      resp["constraints"] = {0.0, 1.0};
    } else {
      resp["objective"] = theta.at(0);
      resp["constraints"] = {theta.size() > 1 ? theta.at(1).get<double>() : 0.0};
    }
    std::cout << resp.dump() << std::endl;
  }
  return 0;
}
