/*
 * Copyright 2026 The Growing Spheres Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Client side of the GS1 line protocol, which serves predictions from a child
// process over its standard input and output:
//
//   engine -> adapter   GS1 <d>
//   adapter -> engine   OK <k>          labels 0..k-1, or -1 and 1 when k = 2
//   engine -> adapter   P <m>           followed by m lines of d floats
//   adapter -> engine   <m labels separated by single spaces>
//   engine -> adapter   QUIT            adapter exits 0
//
// Lines end with a single '\n'. Anything else is a protocol violation.

#ifndef GROWING_SPHERES_EXTERNAL_HPP_
#define GROWING_SPHERES_EXTERNAL_HPP_

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstddef>
#include <cstring>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "growing_spheres/classifier.hpp"
#include "growing_spheres/core.hpp"
#include "growing_spheres/error.hpp"
#include "growing_spheres/format.hpp"

namespace gs {

class ExternalClassifier final : public Classifier {
 public:
  static constexpr std::size_t kMaxBatch = 65536;
  static constexpr std::chrono::milliseconds kDefaultTimeout{30000};

  // Spawns argv[0] (resolved through PATH) and performs the handshake.
  ExternalClassifier(std::vector<std::string> argv, std::size_t dimension,
                     std::chrono::milliseconds timeout = kDefaultTimeout)
      : dimension_(dimension), timeout_(timeout) {
    if (argv.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "empty adapter command line");
    }
    if (dimension == 0) {
      throw Error(ErrorCode::kInvalidDimension, "adapter dimension 0");
    }
    spawn(argv);
    try {
      handshake();
    } catch (...) {
      terminate();
      throw;
    }
  }

  ExternalClassifier(const ExternalClassifier&) = delete;
  ExternalClassifier& operator=(const ExternalClassifier&) = delete;

  ~ExternalClassifier() override { shutdown(); }

  std::size_t dimension() const override { return dimension_; }
  std::vector<Label> label_set() const override { return labels_; }
  bool concurrent_safe() const override { return false; }

  std::vector<Label> predict(const PointBatch& batch) const override {
    if (batch.dimension() != dimension_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "adapter expects dimension " + std::to_string(dimension_));
    }
    if (batch.empty()) return {};
    std::lock_guard lock(mu_);
    if (broken_) {
      throw Error(ErrorCode::kProcessDead, "adapter connection is unusable");
    }
    std::vector<Label> out;
    out.reserve(batch.size());
    try {
      for (std::size_t start = 0; start < batch.size(); start += kMaxBatch) {
        const std::size_t count = std::min(kMaxBatch, batch.size() - start);
        request_chunk(batch, start, count, out);
      }
    } catch (...) {
      broken_ = true;
      throw;
    }
    return out;
  }

  // Sends QUIT and reaps the child. Returns its exit status, or -1 if it had
  // to be killed or was already reaped.
  int shutdown() {
    std::lock_guard lock(mu_);
    if (pid_ <= 0) return -1;
    if (!broken_) {
      try {
        write_all("QUIT\n");
      } catch (const Error&) {
      }
    }
    close_fd(to_child_);
    const auto deadline = std::chrono::steady_clock::now() + timeout_;
    int status = 0;
    while (true) {
      const pid_t r = ::waitpid(pid_, &status, WNOHANG);
      if (r == pid_) break;
      if (r < 0 || std::chrono::steady_clock::now() > deadline) {
        terminate();
        return -1;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }
    pid_ = -1;
    close_fd(from_child_);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

 private:
  using Clock = std::chrono::steady_clock;

  static void close_fd(int& fd) {
    if (fd >= 0) ::close(fd);
    fd = -1;
  }

  void spawn(const std::vector<std::string>& argv) {
    // Writes to a dead adapter must surface as EPIPE, not kill the engine.
    ::signal(SIGPIPE, SIG_IGN);

    int in_pipe[2];
    int out_pipe[2];
    if (::pipe2(in_pipe, O_CLOEXEC) != 0) {
      throw Error(ErrorCode::kIo, std::string("pipe: ") + std::strerror(errno));
    }
    if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
      ::close(in_pipe[0]);
      ::close(in_pipe[1]);
      throw Error(ErrorCode::kIo, std::string("pipe: ") + std::strerror(errno));
    }
    std::vector<char*> cargv;
    for (const std::string& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);

    const pid_t pid = ::fork();
    if (pid < 0) {
      for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) {
        ::close(fd);
      }
      throw Error(ErrorCode::kIo, std::string("fork: ") + std::strerror(errno));
    }
    if (pid == 0) {
      ::dup2(in_pipe[0], STDIN_FILENO);
      ::dup2(out_pipe[1], STDOUT_FILENO);
      ::signal(SIGPIPE, SIG_DFL);
      ::execvp(cargv[0], cargv.data());
      ::_exit(127);
    }
    ::close(in_pipe[0]);
    ::close(out_pipe[1]);
    pid_ = pid;
    to_child_ = in_pipe[1];
    from_child_ = out_pipe[0];
    ::fcntl(to_child_, F_SETFL, ::fcntl(to_child_, F_GETFL) | O_NONBLOCK);
    ::fcntl(from_child_, F_SETFL, ::fcntl(from_child_, F_GETFL) | O_NONBLOCK);
  }

  void terminate() {
    if (pid_ > 0) {
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, nullptr, 0);
      pid_ = -1;
    }
    close_fd(to_child_);
    close_fd(from_child_);
    broken_ = true;
  }

  void handshake() {
    write_all("GS1 " + std::to_string(dimension_) + "\n");
    const std::string reply = read_line(Clock::now() + timeout_);
    if (reply.rfind("OK ", 0) != 0) {
      throw Error(ErrorCode::kProtocolViolation,
                  "expected 'OK <k>', got '" + reply + "'");
    }
    const auto k = parse_int<int>(std::string_view(reply).substr(3));
    if (!k || *k < 2) {
      throw Error(ErrorCode::kProtocolViolation,
                  "invalid class count in '" + reply + "'");
    }
    if (*k == 2) {
      labels_ = {Label(-1), Label(1)};
    } else {
      for (int i = 0; i < *k; ++i) labels_.emplace_back(i);
    }
  }

  void request_chunk(const PointBatch& batch, std::size_t start,
                     std::size_t count, std::vector<Label>& out) const {
    const auto deadline = Clock::now() + timeout_;
    std::string request = "P " + std::to_string(count) + "\n";
    request.reserve(request.size() + count * dimension_ * 12);
    for (std::size_t i = start; i < start + count; ++i) {
      const auto row = batch.row(i);
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j > 0) request.push_back(' ');
        append_double(request, row[j]);
      }
      request.push_back('\n');
    }
    write_all(request, deadline);

    const std::string reply = read_line(deadline);
    std::size_t parsed = 0;
    std::string_view rest(reply);
    while (true) {
      const std::size_t space = rest.find(' ');
      const std::string_view token = rest.substr(0, space);
      const auto value = parse_int<int>(token);
      if (!value) {
        throw Error(ErrorCode::kProtocolViolation,
                    "malformed label '" + std::string(token) + "'");
      }
      const Label label(*value);
      if (std::find(labels_.begin(), labels_.end(), label) == labels_.end()) {
        throw Error(ErrorCode::kProtocolViolation,
                    "label " + std::to_string(*value) + " outside label set");
      }
      out.push_back(label);
      ++parsed;
      if (space == std::string_view::npos) break;
      rest.remove_prefix(space + 1);
    }
    if (parsed != count) {
      throw Error(ErrorCode::kProtocolViolation,
                  "adapter answered " + std::to_string(parsed) +
                      " labels for " + std::to_string(count) + " points");
    }
  }

  static int remaining_ms(Clock::time_point deadline) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - Clock::now());
    return static_cast<int>(std::max<long long>(0, left.count()));
  }

  void write_all(std::string_view data) const {
    write_all(data, Clock::now() + timeout_);
  }

  void write_all(std::string_view data, Clock::time_point deadline) const {
    while (!data.empty()) {
      const ssize_t n = ::write(to_child_, data.data(), data.size());
      if (n > 0) {
        data.remove_prefix(static_cast<std::size_t>(n));
        continue;
      }
      if (n < 0 && errno == EINTR) continue;
      if (n < 0 && errno == EPIPE) {
        throw Error(ErrorCode::kProcessDead, "adapter closed its input");
      }
      if (n < 0 && errno != EAGAIN && errno != EWOULDBLOCK) {
        throw Error(ErrorCode::kIo, std::string("write: ") + std::strerror(errno));
      }
      pollfd pfd{to_child_, POLLOUT, 0};
      const int ready = ::poll(&pfd, 1, remaining_ms(deadline));
      if (ready == 0) {
        throw Error(ErrorCode::kTimeout, "adapter did not accept the request");
      }
      if (ready > 0 && (pfd.revents & (POLLERR | POLLHUP))) {
        throw Error(ErrorCode::kProcessDead, "adapter closed its input");
      }
    }
  }

  std::string read_line(Clock::time_point deadline) const {
    while (true) {
      const std::size_t eol = buffer_.find('\n');
      if (eol != std::string::npos) {
        std::string line = buffer_.substr(0, eol);
        buffer_.erase(0, eol + 1);
        return line;
      }
      char chunk[65536];
      const ssize_t n = ::read(from_child_, chunk, sizeof(chunk));
      if (n > 0) {
        buffer_.append(chunk, static_cast<std::size_t>(n));
        continue;
      }
      if (n == 0) {
        throw Error(ErrorCode::kProcessDead, "adapter exited");
      }
      if (errno == EINTR) continue;
      if (errno != EAGAIN && errno != EWOULDBLOCK) {
        throw Error(ErrorCode::kIo, std::string("read: ") + std::strerror(errno));
      }
      pollfd pfd{from_child_, POLLIN, 0};
      const int ready = ::poll(&pfd, 1, remaining_ms(deadline));
      if (ready == 0) {
        throw Error(ErrorCode::kTimeout, "no reply from adapter within " +
                                             std::to_string(timeout_.count()) +
                                             " ms");
      }
    }
  }

  std::size_t dimension_;
  std::chrono::milliseconds timeout_;
  std::vector<Label> labels_;

  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;

  mutable std::mutex mu_;
  mutable std::string buffer_;
  mutable bool broken_ = false;
};

}  // namespace gs

#endif  // GROWING_SPHERES_EXTERNAL_HPP_
