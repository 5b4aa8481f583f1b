#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scorch/candidate.hpp"

namespace scorch::gen {

// Per-key perturbation law for the deterministic mutator. Numeric laws draw
// one step from `steps` and a direction, then clamp to [lower, upper];
// multiplicative laws apply the drawn factor (> 1) up or down.
struct KeySchedule {
  enum class Law { additive, multiplicative, categorical };
  Law law = Law::additive;
  std::vector<double> steps;  // step ladder; single entry is the common case
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  std::vector<std::string> choices;  // categorical only

  static KeySchedule additive(double step, double lower, double upper) {
    return {Law::additive, {step}, lower, upper, {}};
  }
  static KeySchedule multiplicative(double factor, double lower, double upper) {
    return {Law::multiplicative, {factor}, lower, upper, {}};
  }
  static KeySchedule categorical(std::vector<std::string> choices) {
    KeySchedule s;
    s.law = Law::categorical;
    s.choices = std::move(choices);
    return s;
  }
};

// std::map keeps keys ordered, which makes the seeded key draw stable.
using MutationSchedule = std::map<std::string, KeySchedule>;

struct MutationResult {
  nlohmann::json config;
  bool exhausted = false;  // no mutable dimension existed
};

// Perturbs exactly one key of the parent config (key picked by seeded draw).
// Throws std::invalid_argument for a config key without a schedule entry.
MutationResult mutate_config(const nlohmann::json& parent_config,
                             const MutationSchedule& schedule,
                             std::uint64_t seed);

// Raised when generation itself fails (process died, timeout, error reply):
// distinct from a candidate that runs and scores poorly.
struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProcessSpec {
  std::vector<std::string> argv;
  double timeout_s = 120.0;
};

struct HttpSpec {
  std::string host;  // e.g. "127.0.0.1"
  int port = 0;
  std::string path = "/generate";
  double timeout_s = 120.0;
};

struct GeneratorHandle {
  enum class Kind { deterministic_mutator, external_process };
  Kind kind = Kind::deterministic_mutator;
  MutationSchedule schedule;           // deterministic_mutator settings
  std::optional<ProcessSpec> process;  // external: exactly one of these
  std::optional<HttpSpec> http;

  static GeneratorHandle mutator(MutationSchedule schedule) {
    GeneratorHandle h;
    h.kind = Kind::deterministic_mutator;
    h.schedule = std::move(schedule);
    return h;
  }
  static GeneratorHandle external(ProcessSpec spec) {
    GeneratorHandle h;
    h.kind = Kind::external_process;
    h.process = std::move(spec);
    return h;
  }
  static GeneratorHandle external(HttpSpec spec) {
    GeneratorHandle h;
    h.kind = Kind::external_process;
    h.http = std::move(spec);
    return h;
  }
};

struct GenerateResult {
  Candidate candidate;
  bool exhausted = false;
};

inline constexpr int kWireProtocolVersion = 1;

// Line-delimited JSON exchange with a generator child process over its
// standard streams. The child is started lazily and restarted after a
// failure; requests on one handle are serialized.
class ProcessGenerator {
 public:
  explicit ProcessGenerator(ProcessSpec spec);
  ~ProcessGenerator();
  ProcessGenerator(const ProcessGenerator&) = delete;
  ProcessGenerator& operator=(const ProcessGenerator&) = delete;

  Candidate generate(const Candidate& parent, const AdviceBundle& advice,
                     std::uint64_t seed);

 private:
  void ensure_running();
  void shutdown();

  ProcessSpec spec_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

// Same request/response bodies POSTed to an HTTP endpoint.
Candidate http_generate(const HttpSpec& spec, const Candidate& parent,
                        const AdviceBundle& advice, std::uint64_t seed);

nlohmann::json make_generate_request(const Candidate& parent,
                                     const AdviceBundle& advice,
                                     std::uint64_t seed);
Candidate parse_generate_response(const std::string& body,
                                  const Candidate& parent);

// Unified front end used by the search loop.
class Generator {
 public:
  explicit Generator(GeneratorHandle handle);

  // Deterministic for the mutator given (parent, seed); may throw
  // GenerationError for external backends.
  GenerateResult generate(const Candidate& parent, const AdviceBundle& advice,
                          std::uint64_t seed);

  const GeneratorHandle& handle() const { return handle_; }

 private:
  GeneratorHandle handle_;
  std::unique_ptr<ProcessGenerator> process_;
};

// Assembles the generation context. When a recombination pair is given the
// bundle carries both summaries plus an explicit instruction to produce a
// hybrid of the two.
AdviceBundle build_advice(const std::string& task_description,
                          const std::vector<std::string>& ideas,
                          const std::optional<std::pair<std::string, std::string>>&
                              recombination);

}  // namespace scorch::gen
