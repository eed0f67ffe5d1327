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

#include "cego/external_blackbox.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>

#include <json.hpp>

#include "cego/errors.hpp"

namespace cego {

using nlohmann::json;

std::string encode_blackbox_request(const ParameterVector& theta) {
  json request;
  request["theta"] = std::vector<double>(theta.data(), theta.data() + theta.size());
  return request.dump();
}

Evaluation decode_blackbox_response(const std::string& line, std::size_t n_constraints) {
  json reply;
  try {
    reply = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ProtocolError("black-box: response is not JSON: " + std::string(e.what()));
  }
  if (!reply.is_object() || !reply.contains("objective") || !reply["objective"].is_number()) {
    throw ProtocolError("black-box: response lacks a numeric \"objective\"");
  }
  Evaluation e;
  e.objective = reply["objective"].get<double>();
  const auto it = reply.find("constraints");
  if (it == reply.end() || !it->is_array()) {
    throw ProtocolError("black-box: response lacks a \"constraints\" array");
  }
  for (const auto& g : *it) {
    if (!g.is_number()) throw ProtocolError("black-box: non-numeric constraint value");
    e.constraints.push_back(g.get<double>());
  }
  if (e.constraints.size() != n_constraints) {
    throw ProtocolError("black-box: expected " + std::to_string(n_constraints) + " constraints, got " +
                        std::to_string(e.constraints.size()));
  }
  if (!std::isfinite(e.objective)) throw ProtocolError("black-box: non-finite objective");
  for (double g : e.constraints) {
    if (!std::isfinite(g)) throw ProtocolError("black-box: non-finite constraint");
  }
  return e;
}

ExternalBlackBox::ExternalBlackBox(std::string name, Domain domain, std::size_t n_constraints,
                                   ExternalCommand command, std::vector<double> noise_std)
    : Problem(std::move(name), std::move(domain), n_constraints, std::move(noise_std)),
      command_(std::move(command)) {
  if (command_.argv.empty()) throw InvalidArgument("black-box: empty command");
  if (command_.timeout.count() <= 0) throw InvalidArgument("black-box: timeout must be positive");
}

ExternalBlackBox::~ExternalBlackBox() { terminate(); }

void ExternalBlackBox::spawn() {
  int fds[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0) {
    throw ProtocolError(std::string("black-box: socketpair failed: ") + std::strerror(errno));
  }
  std::vector<char*> argv;
  for (auto& arg : command_.argv) argv.push_back(arg.data());
  argv.push_back(nullptr);

  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw ProtocolError(std::string("black-box: fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::dup2(fds[1], STDIN_FILENO);
    ::dup2(fds[1], STDOUT_FILENO);
    ::execvp(argv[0], argv.data());
    ::_exit(127);
  }
  ::close(fds[1]);
  pid_ = pid;
  fd_ = fds[0];
  buffer_.clear();
}

void ExternalBlackBox::terminate() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
  if (pid_ > 0) {
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
    pid_ = -1;
  }
  buffer_.clear();
}

std::string ExternalBlackBox::read_line() {
  const auto deadline = std::chrono::steady_clock::now() + command_.timeout;
  while (true) {
    const auto newline = buffer_.find('\n');
    if (newline != std::string::npos) {
      std::string line = buffer_.substr(0, newline);
      buffer_.erase(0, newline + 1);
      return line;
    }
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) {
      throw TimeoutError("black-box: no response within " + std::to_string(command_.timeout.count()) + " ms");
    }
    pollfd p{fd_, POLLIN, 0};
    const int ready = ::poll(&p, 1, static_cast<int>(remaining.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("black-box: poll failed: ") + std::strerror(errno));
    }
    if (ready == 0) continue;
    char chunk[4096];
    const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("black-box: read failed: ") + std::strerror(errno));
    }
    if (n == 0) throw ProtocolError("black-box: child closed its output (exited?)");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

Evaluation ExternalBlackBox::evaluate(const ParameterVector& theta) {
  if (!domain().contains(theta)) throw InvalidArgument("black-box: theta outside the domain");
  if (pid_ <= 0) spawn();
  try {
    const std::string request = encode_blackbox_request(theta) + "\n";
    std::size_t sent = 0;
    while (sent < request.size()) {
      const ssize_t n = ::send(fd_, request.data() + sent, request.size() - sent, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw ProtocolError(std::string("black-box: write failed: ") + std::strerror(errno));
      }
      sent += static_cast<std::size_t>(n);
    }
    return decode_blackbox_response(read_line(), n_constraints());
  } catch (...) {
    terminate();
    throw;
  }
}

}  // namespace cego
