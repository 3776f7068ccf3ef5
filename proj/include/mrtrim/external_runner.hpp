#ifndef MRTRIM_EXTERNAL_RUNNER_HPP
#define MRTRIM_EXTERNAL_RUNNER_HPP

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstdint>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "mrtrim/canonical.hpp"
#include "mrtrim/errors.hpp"
#include "mrtrim/runner.hpp"
#include "mrtrim/runner_types.hpp"

namespace mrtrim {

// Drives an arbitrary external program as the SUT over a line-delimited JSON
// protocol on its standard streams:
//
//   request   {"id": <int>, "input": [<numbers>]}\n
//   response  {"id": <int>, "output": <number>}\n   — success
//             {"id": <int>, "error": "<message>"}\n — SUT-side failure
//
// One response per request, matching ids, UTF-8. SUT-side errors map to
// Failure(DOMAIN_ERROR); a missing response within the timeout maps to
// Failure(TIMEOUT); a malformed or mismatched response line fails only the
// record it belongs to — the run continues.

struct ExternalSutSpec {
  std::vector<std::string> command;  // argv; command[0] resolved via PATH
  std::string name = "external";     // method name recorded in artifacts
  double timeout_seconds = 2.0;      // per call
};

/// One child process speaking the wire protocol. Calls are serialized.
class ExternalSut {
 public:
  explicit ExternalSut(const std::vector<std::string>& command) {
    if (command.empty()) throw LookupError("external SUT: empty command");
    ::signal(SIGPIPE, SIG_IGN);  // broken pipes surface as EPIPE, not death

    int to_child[2], from_child[2], exec_err[2];
    if (::pipe(to_child) != 0 || ::pipe(from_child) != 0 || ::pipe(exec_err) != 0)
      throw LookupError("external SUT: pipe() failed");
    ::fcntl(exec_err[1], F_SETFD, FD_CLOEXEC);

    pid_ = ::fork();
    if (pid_ < 0) throw LookupError("external SUT: fork() failed");
    if (pid_ == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      ::close(exec_err[0]);
      std::vector<char*> argv;
      argv.reserve(command.size() + 1);
      for (const std::string& a : command) argv.push_back(const_cast<char*>(a.c_str()));
      argv.push_back(nullptr);
      ::execvp(argv[0], argv.data());
      const int err = errno;  // exec failed; report it through the CLOEXEC pipe
      (void)!::write(exec_err[1], &err, sizeof err);
      ::_exit(127);
    }

    ::close(to_child[0]);
    ::close(from_child[1]);
    ::close(exec_err[1]);
    in_fd_ = to_child[1];
    out_fd_ = from_child[0];

    int err = 0;
    if (::read(exec_err[0], &err, sizeof err) == sizeof err) {
      ::close(exec_err[0]);
      close_fds();
      ::waitpid(pid_, nullptr, 0);
      pid_ = -1;
      throw LookupError("cannot start external SUT '" + command[0] +
                        "': " + std::strerror(err));
    }
    ::close(exec_err[0]);
  }

  ExternalSut(const ExternalSut&) = delete;
  ExternalSut& operator=(const ExternalSut&) = delete;

  ~ExternalSut() {
    close_fds();
    if (pid_ > 0) {
      ::kill(pid_, SIGTERM);
      ::waitpid(pid_, nullptr, 0);
    }
  }

  /// One request/response exchange. Never throws; every protocol problem is
  /// expressed as a Failure outcome for this call only.
  ExecutionOutcome call(const std::vector<double>& input, double timeout_seconds) {
    const std::uint64_t id = next_request_id_++;
    nlohmann::json req{{"id", id}, {"input", input}};
    std::string line = req.dump();
    line += '\n';
    if (!write_all(line))
      return ExecutionOutcome::fail(FailureKind::kDomainError,
                                    "external SUT closed its input");

    const auto deadline =
        std::chrono::steady_clock::now() +
        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
            std::chrono::duration<double>(timeout_seconds));
    for (;;) {
      std::optional<std::string> resp = read_line(deadline);
      if (!resp)
        return ExecutionOutcome::fail(FailureKind::kTimeout,
                                      "no response within " +
                                          format_number(timeout_seconds) + "s");
      nlohmann::json j = nlohmann::json::parse(*resp, nullptr, false);
      if (j.is_discarded() || !j.is_object() || !j.contains("id") ||
          !j["id"].is_number_integer())
        return ExecutionOutcome::fail(FailureKind::kDomainError,
                                      "malformed response: " + snippet(*resp));
      const auto resp_id = j["id"].get<std::uint64_t>();
      if (resp_id < id) continue;  // stale reply to an earlier timed-out call
      if (resp_id > id)
        return ExecutionOutcome::fail(FailureKind::kDomainError,
                                      "response id mismatch: expected " +
                                          std::to_string(id) + ", got " +
                                          std::to_string(resp_id));
      if (j.contains("error") && j["error"].is_string())
        return ExecutionOutcome::fail(FailureKind::kDomainError,
                                      j["error"].get<std::string>());
      if (j.contains("output") && j["output"].is_number())
        return ExecutionOutcome::of(j["output"].get<double>());
      return ExecutionOutcome::fail(FailureKind::kDomainError,
                                    "malformed response: " + snippet(*resp));
    }
  }

 private:
  void close_fds() {
    if (in_fd_ >= 0) ::close(in_fd_);
    if (out_fd_ >= 0) ::close(out_fd_);
    in_fd_ = out_fd_ = -1;
  }

  bool write_all(const std::string& s) {
    std::size_t off = 0;
    while (off < s.size()) {
      const ssize_t n = ::write(in_fd_, s.data() + off, s.size() - off);
      if (n <= 0) {
        if (n < 0 && errno == EINTR) continue;
        return false;
      }
      off += static_cast<std::size_t>(n);
    }
    return true;
  }

  /// Next full line from the child, or nullopt on timeout/EOF.
  std::optional<std::string> read_line(std::chrono::steady_clock::time_point deadline) {
    for (;;) {
      const std::size_t nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      if (remaining.count() <= 0) return std::nullopt;
      struct pollfd pfd{out_fd_, POLLIN, 0};
      const int pr = ::poll(&pfd, 1, static_cast<int>(remaining.count()) + 1);
      if (pr < 0 && errno == EINTR) continue;
      if (pr <= 0) return std::nullopt;
      char chunk[4096];
      const ssize_t n = ::read(out_fd_, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) return std::nullopt;  // EOF: child closed its output
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  static std::string snippet(const std::string& s) {
    return s.size() <= 80 ? s : s.substr(0, 77) + "...";
  }

  pid_t pid_ = -1;
  int in_fd_ = -1;
  int out_fd_ = -1;
  std::string buffer_;
  std::uint64_t next_request_id_ = 0;
};

/// Runs an external program over a transformed bundle. Same record contract
/// as the in-process runner with a single method named spec.name; calls are
/// serialized through one child process in exec_id order.
inline std::vector<ExecutionRecord> run_external(const ExternalSutSpec& spec,
                                                 const std::vector<MrSpec>& mrs,
                                                 const TransformedBundle& bundle) {
  ExternalSut sut(spec.command);
  std::vector<ExecutionRecord> records;
  records.reserve(mrs.size() * bundle.entries.size());
  std::uint64_t exec_id = 0;
  for (const MrSpec& mr : mrs) {
    for (const TransformedEntry& entry : bundle.entries) {
      ExecutionRecord r;
      r.exec_id = exec_id++;
      r.method = spec.name;
      r.mr = mr.id;
      r.source_input = entry.datum.values;
      r.source_outcome = runner_detail::canonicalize(
          sut.call(entry.datum.values, spec.timeout_seconds));
      const auto& variant = entry.variants[mr_index(mr.id)];
      if (variant.has_value()) {
        r.followup_input = *variant;
        r.followup_outcome =
            runner_detail::canonicalize(sut.call(*variant, spec.timeout_seconds));
      }
      records.push_back(std::move(r));
    }
  }
  return records;
}

}  // namespace mrtrim

#endif  // MRTRIM_EXTERNAL_RUNNER_HPP
