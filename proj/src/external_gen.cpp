#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>

#include "scorch/generator.hpp"

#define CPPHTTPLIB_NO_EXCEPTIONS 0
#include <httplib.h>

namespace scorch::gen {

using nlohmann::json;

json make_generate_request(const Candidate& parent, const AdviceBundle& advice,
                           std::uint64_t seed) {
  json req;
  req["protocol_version"] = kWireProtocolVersion;
  req["parent_payload"] = parent.payload;
  req["parent_kind"] = to_string(parent.kind);
  req["advice"] = advice.to_json();
  req["seed"] = seed;
  return req;
}

Candidate parse_generate_response(const std::string& body,
                                  const Candidate& parent) {
  json resp;
  try {
    resp = json::parse(body);
  } catch (const json::exception& e) {
    throw GenerationError(std::string("unparseable generator response: ") + e.what());
  }
  if (resp.contains("error")) {
    throw GenerationError("generator reported: " + resp["error"].dump());
  }
  if (!resp.contains("child_payload") || !resp["child_payload"].is_string()) {
    throw GenerationError("generator response lacks child_payload");
  }
  Candidate child;
  child.kind = parent.kind;
  child.payload = resp["child_payload"].get<std::string>();
  if (child.payload.empty()) {
    throw GenerationError("generator returned an empty payload");
  }
  child.parent_digest = parent.digest();
  return child;
}

// ---------------------------------------------------------------------------
// child process plumbing
// ---------------------------------------------------------------------------

ProcessGenerator::ProcessGenerator(ProcessSpec spec) : spec_(std::move(spec)) {
  if (spec_.argv.empty()) {
    throw std::invalid_argument("ProcessSpec.argv must be nonempty");
  }
}

ProcessGenerator::~ProcessGenerator() { shutdown(); }

void ProcessGenerator::shutdown() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    kill(pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
    pid_ = -1;
  }
  buffer_.clear();
}

void ProcessGenerator::ensure_running() {
  if (pid_ > 0) return;
  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) {
    throw GenerationError("cannot create pipes for generator process");
  }
  pid_t pid = fork();
  if (pid < 0) {
    throw GenerationError("cannot fork generator process");
  }
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    std::vector<char*> argv;
    for (auto& arg : spec_.argv) argv.push_back(const_cast<char*>(arg.c_str()));
    argv.push_back(nullptr);
    execvp(argv[0], argv.data());
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  buffer_.clear();
}

Candidate ProcessGenerator::generate(const Candidate& parent,
                                     const AdviceBundle& advice,
                                     std::uint64_t seed) {
  ensure_running();
  const std::string line = make_generate_request(parent, advice, seed).dump() + "\n";

  const char* data = line.data();
  std::size_t remaining = line.size();
  while (remaining > 0) {
    ssize_t n = write(to_child_, data, remaining);
    if (n < 0) {
      if (errno == EINTR) continue;
      shutdown();
      throw GenerationError("generator process unavailable (write failed)");
    }
    data += n;
    remaining -= static_cast<std::size_t>(n);
  }

  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration<double>(spec_.timeout_s);
  while (true) {
    auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string body = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return parse_generate_response(body, parent);
    }
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      shutdown();
      throw GenerationError("generator timed out");
    }
    const int wait_ms = static_cast<int>(std::min<long long>(
        200, std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count() + 1));
    pollfd pfd{from_child_, POLLIN, 0};
    int rc = poll(&pfd, 1, wait_ms);
    if (rc < 0 && errno != EINTR) {
      shutdown();
      throw GenerationError("generator poll failed");
    }
    if (rc > 0) {
      char chunk[4096];
      ssize_t n = read(from_child_, chunk, sizeof(chunk));
      if (n <= 0) {
        shutdown();
        throw GenerationError("generator process closed its output");
      }
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }
}

Candidate http_generate(const HttpSpec& spec, const Candidate& parent,
                        const AdviceBundle& advice, std::uint64_t seed) {
  httplib::Client client(spec.host, spec.port);
  client.set_connection_timeout(std::chrono::duration<double>(spec.timeout_s));
  client.set_read_timeout(std::chrono::duration<double>(spec.timeout_s));
  const std::string body = make_generate_request(parent, advice, seed).dump();
  auto res = client.Post(spec.path, body, "application/json");
  if (!res) {
    throw GenerationError("generator endpoint unreachable");
  }
  if (res->status != 200) {
    throw GenerationError("generator endpoint returned status " +
                          std::to_string(res->status));
  }
  return parse_generate_response(res->body, parent);
}

// ---------------------------------------------------------------------------
// unified front end
// ---------------------------------------------------------------------------

Generator::Generator(GeneratorHandle handle) : handle_(std::move(handle)) {
  if (handle_.kind == GeneratorHandle::Kind::external_process) {
    const bool has_process = handle_.process.has_value();
    const bool has_http = handle_.http.has_value();
    if (has_process == has_http) {
      throw std::invalid_argument(
          "external generator needs exactly one of process/http specs");
    }
    if (has_process) {
      process_ = std::make_unique<ProcessGenerator>(*handle_.process);
    }
  }
}

GenerateResult Generator::generate(const Candidate& parent,
                                   const AdviceBundle& advice,
                                   std::uint64_t seed) {
  if (handle_.kind == GeneratorHandle::Kind::deterministic_mutator) {
    MutationResult m = mutate_config(parent.config(), handle_.schedule, seed);
    Candidate child = Candidate::from_config(m.config);
    child.parent_digest = parent.digest();
    return {std::move(child), m.exhausted};
  }
  if (process_) {
    return {process_->generate(parent, advice, seed), false};
  }
  return {http_generate(*handle_.http, parent, advice, seed), false};
}

}  // namespace scorch::gen
