#include <algorithm>
#include <cmath>

#include "scorch/generator.hpp"
#include "scorch/rng.hpp"

namespace scorch::gen {

using nlohmann::json;

namespace {

double clamp(double v, const KeySchedule& s) {
  return std::min(std::max(v, s.lower), s.upper);
}

}  // namespace

MutationResult mutate_config(const json& parent_config,
                             const MutationSchedule& schedule,
                             std::uint64_t seed) {
  if (!parent_config.is_object()) {
    throw std::invalid_argument("mutate_config: config must be an object");
  }
  std::vector<std::string> keys;
  for (const auto& [key, value] : parent_config.items()) {
    if (!schedule.count(key)) {
      throw std::invalid_argument("mutate_config: no schedule entry for key '" + key + "'");
    }
    keys.push_back(key);  // json objects iterate in sorted key order
  }
  if (keys.empty()) {
    return {parent_config, true};
  }

  Rng rng(seed);
  const std::string& key = keys[rng.next_below(keys.size())];
  const KeySchedule& law = schedule.at(key);
  json child = parent_config;

  auto draw_step = [&rng, &law]() {
    if (law.steps.empty()) {
      throw std::invalid_argument("numeric schedule has an empty step ladder");
    }
    return law.steps[rng.next_below(law.steps.size())];
  };

  switch (law.law) {
    case KeySchedule::Law::additive: {
      const double v = parent_config.at(key).get<double>();
      const double step = draw_step();
      const double delta = rng.next_bool() ? step : -step;
      child[key] = clamp(v + delta, law);
      break;
    }
    case KeySchedule::Law::multiplicative: {
      const double v = parent_config.at(key).get<double>();
      const double step = draw_step();
      const double factor = rng.next_bool() ? step : 1.0 / step;
      child[key] = clamp(v * factor, law);
      break;
    }
    case KeySchedule::Law::categorical: {
      const std::string current = parent_config.at(key).get<std::string>();
      std::vector<std::string> others;
      for (const auto& choice : law.choices) {
        if (choice != current) others.push_back(choice);
      }
      if (others.empty()) {
        return {parent_config, true};
      }
      child[key] = others[rng.next_below(others.size())];
      break;
    }
  }
  return {child, false};
}

AdviceBundle build_advice(
    const std::string& task_description,
    const std::vector<std::string>& ideas,
    const std::optional<std::pair<std::string, std::string>>& recombination) {
  AdviceBundle bundle;
  bundle.task_description = task_description;
  bundle.research_ideas = ideas;
  if (recombination) {
    bundle.recombination_summary =
        "Two existing strategies are described below. Design one hybrid "
        "strategy that keeps the strongest elements of each and aims to "
        "score higher than either original.\n\nStrategy A:\n" +
        recombination->first + "\n\nStrategy B:\n" + recombination->second;
  }
  return bundle;
}

}  // namespace scorch::gen
