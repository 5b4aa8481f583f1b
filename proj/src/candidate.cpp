#include "scorch/candidate.hpp"

#include <stdexcept>

#include "scorch/digest.hpp"

namespace scorch::gen {

using nlohmann::json;

json AdviceBundle::to_json() const {
  json j;
  j["task_description"] = task_description;
  j["research_ideas"] = research_ideas;
  if (recombination_summary) {
    j["recombination_summary"] = *recombination_summary;
  } else {
    j["recombination_summary"] = nullptr;
  }
  json history = json::array();
  for (const auto& [score, summary] : score_history) {
    history.push_back(json{{"score", score}, {"summary", summary}});
  }
  j["score_history"] = history;
  return j;
}

AdviceBundle AdviceBundle::from_json(const json& j) {
  AdviceBundle b;
  b.task_description = j.at("task_description").get<std::string>();
  b.research_ideas = j.at("research_ideas").get<std::vector<std::string>>();
  if (j.contains("recombination_summary") && !j["recombination_summary"].is_null()) {
    b.recombination_summary = j["recombination_summary"].get<std::string>();
  }
  if (j.contains("score_history")) {
    for (const auto& item : j["score_history"]) {
      b.score_history.emplace_back(item.at("score").get<double>(),
                                   item.at("summary").get<std::string>());
    }
  }
  return b;
}

std::string AdviceBundle::canonical_text() const { return to_json().dump(); }

std::string Candidate::digest() const { return content_digest(payload); }

json Candidate::config() const {
  if (kind != PayloadKind::parameter_config) {
    throw std::logic_error("candidate payload is not a parameter config");
  }
  return json::parse(payload);
}

Candidate Candidate::from_config(const json& config) {
  Candidate c;
  c.kind = PayloadKind::parameter_config;
  c.payload = config.dump();  // nlohmann objects serialize with sorted keys
  return c;
}

Candidate Candidate::from_program(std::string text) {
  if (text.empty()) {
    throw std::invalid_argument("program payload must be nonempty");
  }
  Candidate c;
  c.kind = PayloadKind::program_text;
  c.payload = std::move(text);
  return c;
}

std::string to_string(PayloadKind kind) {
  return kind == PayloadKind::program_text ? "program_text" : "parameter_config";
}

}  // namespace scorch::gen
