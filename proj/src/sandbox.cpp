#include "scorch/sandbox.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace scorch::sandbox {

using nlohmann::json;

std::string to_string(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::timeout: return "timeout";
    case Status::crashed: return "crashed";
    case Status::bad_output: return "bad_output";
  }
  return "unknown";
}

std::optional<double> parse_score_line(const std::string& stdout_text) {
  // Last nonempty line must read "SCORE <decimal>".
  std::size_t end = stdout_text.size();
  while (end > 0 && (stdout_text[end - 1] == '\n' || stdout_text[end - 1] == '\r')) {
    --end;
  }
  if (end == 0) return std::nullopt;
  std::size_t start = stdout_text.rfind('\n', end - 1);
  start = (start == std::string::npos) ? 0 : start + 1;
  std::string line = stdout_text.substr(start, end - start);
  constexpr std::string_view kPrefix = "SCORE ";
  if (line.rfind(kPrefix, 0) != 0) return std::nullopt;
  const char* first = line.data() + kPrefix.size();
  const char* last = line.data() + line.size();
  while (first < last && *first == ' ') ++first;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

std::string format_score_line(double score) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "SCORE %.17g", score);
  return buf;
}

namespace {

ExecutionRecord run_config(const gen::Candidate& candidate,
                           const ExecutionContract& contract,
                           const std::filesystem::path& scratch_dir) {
  ExecutionRecord rec;
  rec.artifacts_dir = scratch_dir;
  const auto start = std::chrono::steady_clock::now();
  try {
    const double score = contract.config_scorer(candidate.config());
    const auto stop = std::chrono::steady_clock::now();
    rec.wall_time_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count());
    if (std::isfinite(score)) {
      rec.status = Status::ok;
      rec.score = score;
    } else {
      rec.status = Status::bad_output;
      rec.stderr_excerpt = "scorer returned a non-finite value";
    }
  } catch (const std::exception& e) {
    const auto stop = std::chrono::steady_clock::now();
    rec.wall_time_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count());
    rec.status = Status::crashed;
    rec.stderr_excerpt = e.what();
  }
  return rec;
}

void append_capped(std::string& out, const char* data, std::size_t n,
                   std::size_t cap) {
  if (out.size() >= cap) return;
  out.append(data, std::min(n, cap - out.size()));
}

ExecutionRecord run_program(const gen::Candidate& candidate,
                            const ExecutionContract& contract,
                            const Limits& limits,
                            const std::filesystem::path& scratch_dir) {
  namespace fs = std::filesystem;
  if (contract.program_argv.empty()) {
    throw SandboxError("task does not define a program launcher");
  }
  std::error_code ec;
  fs::create_directories(scratch_dir, ec);
  if (ec) throw SandboxError("cannot create scratch directory: " + ec.message());

  {
    std::ofstream out(scratch_dir / contract.program_filename, std::ios::binary);
    if (!out) throw SandboxError("cannot write candidate payload to scratch");
    out << candidate.payload;
  }

  int out_pipe[2], err_pipe[2];
  if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0) {
    throw SandboxError("cannot create pipes");
  }
  const auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) throw SandboxError("cannot fork sandbox process");
  if (pid == 0) {
    if (chdir(scratch_dir.c_str()) != 0) _exit(126);
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(err_pipe[1], STDERR_FILENO);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    close(err_pipe[1]);
    std::vector<std::string> args = contract.program_argv;
    std::vector<char*> argv;
    argv.reserve(args.size() + 1);
    for (auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    execvp(argv[0], argv.data());
    _exit(127);
  }
  close(out_pipe[1]);
  close(err_pipe[1]);

  ExecutionRecord rec;
  rec.artifacts_dir = scratch_dir;
  std::string out_text, err_text;
  bool timed_out = false;
  const auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                    std::chrono::duration<double>(limits.wall_time_s));
  int open_fds = 2;
  pollfd fds[2] = {{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}};
  while (open_fds > 0) {
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      timed_out = true;
      kill(pid, SIGKILL);
      break;
    }
    const int wait_ms = static_cast<int>(std::min<long long>(
        50, std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count() + 1));
    int rc = poll(fds, 2, wait_ms);
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (rc == 0) continue;
    for (int i = 0; i < 2; ++i) {
      if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP))) continue;
      char chunk[4096];
      ssize_t n = read(fds[i].fd, chunk, sizeof(chunk));
      if (n > 0) {
        append_capped(i == 0 ? out_text : err_text, chunk,
                      static_cast<std::size_t>(n), limits.output_bytes);
      } else if (n == 0 || (n < 0 && errno != EINTR)) {
        close(fds[i].fd);
        fds[i].fd = -1;
        --open_fds;
      }
    }
  }
  if (fds[0].fd >= 0) close(fds[0].fd);
  if (fds[1].fd >= 0) close(fds[1].fd);

  int status = 0;
  waitpid(pid, &status, 0);
  const auto stop = std::chrono::steady_clock::now();
  rec.wall_time_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count());
  rec.stdout_excerpt = out_text;
  rec.stderr_excerpt = err_text;

  if (timed_out) {
    rec.status = Status::timeout;
    return rec;
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    rec.status = Status::crashed;
    return rec;
  }
  if (auto score = parse_score_line(out_text); score && std::isfinite(*score)) {
    rec.status = Status::ok;
    rec.score = *score;
  } else {
    rec.status = Status::bad_output;
  }
  return rec;
}

}  // namespace

ExecutionRecord execute(const gen::Candidate& candidate,
                        const ExecutionContract& contract, const Limits& limits,
                        const std::filesystem::path& scratch_dir) {
  if (!(limits.wall_time_s > 0.0) || limits.output_bytes == 0) {
    throw SandboxError("limits must be positive");
  }
  if (candidate.kind == gen::PayloadKind::parameter_config) {
    if (!contract.config_scorer) {
      throw SandboxError("task does not accept parameter_config candidates");
    }
    return run_config(candidate, contract, scratch_dir);
  }
  return run_program(candidate, contract, limits, scratch_dir);
}

}  // namespace scorch::sandbox
