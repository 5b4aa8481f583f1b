#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scorch/candidate.hpp"
#include "scorch/generator.hpp"
#include "scorch/quadrature.hpp"
#include "scorch/sandbox.hpp"

namespace scorch::tasks {

struct InputFile {
  std::string name;
  std::string path;
  std::string digest;
  std::string split;  // "train" | "test"
};

// A problem whose candidates map to a single real score, higher is better.
struct ScorableTask {
  std::string task_id;
  std::string description;
  std::vector<InputFile> input_manifest;
  enum class SplitPolicy { train_only, train_holdout };
  SplitPolicy split_policy = SplitPolicy::train_only;
  gen::Candidate root_candidate;
  sandbox::ExecutionContract contract;       // hill-climbing scorer (train data only)
  gen::MutationSchedule mutation_schedule;   // defaults for the deterministic mutator
  std::function<double(const nlohmann::json&)> holdout_scorer;  // train_holdout tasks
};

// ---------------------------------------------------------------------------
// scoring primitives
// ---------------------------------------------------------------------------

// -ln(1 + |(response - answer)/answer|); 0 at an exact answer, -inf for a
// non-finite response. Falls back to absolute error for |answer| < 1e-12.
double integral_score(double response, double answer);

// Arithmetic mean; -inf is absorbing.
double integral_task_score(std::span<const double> per_integral_scores);

// Negated geometric mean of per-dataset MASE values (all must be > 0).
double forecast_task_score(std::span<const double> per_dataset_mase);

// ---------------------------------------------------------------------------
// built-in tasks
// ---------------------------------------------------------------------------

// Quadratic bowl over R^d: score = -sum (x_i - a_i)^2 with a fixed target.
ScorableTask make_synthetic_task(int dimension);
std::vector<double> synthetic_target(int dimension);

// Tunes the oscillatory-integration scheme against the train split of the
// integral benchmark; the test split stays held out.
ScorableTask make_integrals_task();

// Tunes forecaster configuration parameters against bundled synthetic series;
// the final horizon of each series stays held out.
ScorableTask make_forecast_task();

std::vector<std::string> builtin_task_ids();
ScorableTask make_task(const std::string& task_id, int synthetic_dimension = 4);

// ---------------------------------------------------------------------------
// the integral benchmark
// ---------------------------------------------------------------------------

struct IntegralSpec {
  std::string spec_id;
  std::string formula;
  std::string split;  // "train" | "test"
  double lower_limit = 0.0;
  std::map<std::string, double> params;
  double reference_answer = 0.0;
  std::string reference_text;  // 30 significant digits, as shipped
  quad::Integrand integrand;
  std::vector<std::pair<double, double>> checkpoints;  // (x, f(x)) spot values
};

const std::vector<IntegralSpec>& integral_benchmark();
std::string_view embedded_integral_manifest();

struct IntegralEvalRow {
  std::string spec_id;
  double value = 0.0;
  double reference = 0.0;
  double fractional_error = 0.0;
  quad::Method method_used = quad::Method::baseline;
  bool converged = false;
};

// Runs integrate_oscillatory over one split ("train" | "test" | "all").
std::vector<IntegralEvalRow> eval_integrals(const std::string& split,
                                            const quad::SegmentScheme& scheme,
                                            double tol);

}  // namespace scorch::tasks
