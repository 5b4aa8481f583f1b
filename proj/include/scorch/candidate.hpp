#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace scorch::gen {

// Context handed to a generator alongside the parent candidate: the task
// description, optional pre-summarized research ideas, an optional
// recombination briefing, and recent (score, summary) pairs from ancestor
// evaluations. Serializes canonically (sorted keys) so prompt assembly is
// reproducible byte-for-byte.
struct AdviceBundle {
  std::string task_description;
  std::vector<std::string> research_ideas;
  std::optional<std::string> recombination_summary;
  std::vector<std::pair<double, std::string>> score_history;

  nlohmann::json to_json() const;
  static AdviceBundle from_json(const nlohmann::json& j);
  std::string canonical_text() const;

  bool operator==(const AdviceBundle&) const = default;
};

enum class PayloadKind { program_text, parameter_config };

// One executable unit of work: either opaque program text or a structured
// parameter configuration (stored as canonical JSON text). The digest is a
// pure function of the payload bytes.
struct Candidate {
  PayloadKind kind = PayloadKind::parameter_config;
  std::string payload;
  std::optional<AdviceBundle> advice_context;
  std::optional<std::string> parent_digest;

  std::string digest() const;
  nlohmann::json config() const;  // parses payload; parameter_config only

  static Candidate from_config(const nlohmann::json& config);
  static Candidate from_program(std::string text);
};

std::string to_string(PayloadKind kind);

}  // namespace scorch::gen
