#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scorch/candidate.hpp"

namespace scorch::sandbox {

enum class Status { ok, timeout, crashed, bad_output };

std::string to_string(Status s);

struct ExecutionRecord {
  Status status = Status::crashed;
  double score = -std::numeric_limits<double>::infinity();
  std::uint64_t wall_time_ms = 0;
  std::string stdout_excerpt;
  std::string stderr_excerpt;
  std::optional<std::filesystem::path> artifacts_dir;
};

struct Limits {
  double wall_time_s = 300.0;
  std::size_t output_bytes = 256 * 1024;
};

// Environment/infrastructure failures (cannot spawn, scratch unavailable):
// these abort the surrounding iteration instead of scoring the candidate.
struct SandboxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// How a task wants candidates run. Config candidates are scored in-process
// by `config_scorer`; program candidates are written to `program_filename`
// inside a scratch directory and launched with `program_argv` (cwd =
// scratch), reporting their score as a final "SCORE <decimal>" stdout line.
struct ExecutionContract {
  std::function<double(const nlohmann::json&)> config_scorer;
  std::vector<std::string> program_argv;
  std::string program_filename = "main.py";
};

// Runs one candidate under the limits. Candidate-level failures come back as
// a record (status != ok, score = -inf); only infrastructure problems throw.
ExecutionRecord execute(const gen::Candidate& candidate,
                        const ExecutionContract& contract,
                        const Limits& limits,
                        const std::filesystem::path& scratch_dir);

// Final "SCORE <decimal>" line parser; returns nothing when absent/malformed.
std::optional<double> parse_score_line(const std::string& stdout_text);

// Formats a score so the protocol round-trips within 1 ulp.
std::string format_score_line(double score);

}  // namespace scorch::sandbox
