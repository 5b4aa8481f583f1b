// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <sstream>
#include <vector>

#include "scorch/cli/commands.hpp"
#include "scorch/cli/run_store.hpp"
#include "scorch/forecast/forecaster.hpp"
#include "scorch/quadrature.hpp"
#include "scorch/rng.hpp"
#include "scorch/search.hpp"
#include "scorch/tasks.hpp"

using namespace scorch;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("%s criterion-%d %s: %s\n", pass ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.c_str());
  if (!pass) ++failures;
}

gen::Candidate tag_candidate(double tag) {
  return gen::Candidate::from_config(nlohmann::json{{"x", tag}});
}

double elapsed_s(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// --------------------------------------------------------------------------
// 1. tree mechanics vs brute-force oracles
// --------------------------------------------------------------------------
void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(20250810);
  bool ok = true;
  std::string detail;
  for (int sequence = 0; sequence < 1000 && ok; ++sequence) {
    search::SearchTree tree =
        search::init_tree(tag_candidate(0), rng.next_double(), 1.0, sequence);
    const int inserts = 1 + static_cast<int>(rng.next_below(199));
    for (int i = 0; i < inserts; ++i) {
      const auto parent = static_cast<search::NodeId>(rng.next_below(tree.size()));
      const double score = rng.next_below(10) == 0
                               ? search::kNegInf
                               : std::floor(rng.next_double() * 5) / 5.0;
      tree.expand(parent, tag_candidate(i), score);
    }

    // V(u) = 1 + |descendants(u)| by full recomputation over parent links.
    std::vector<std::uint64_t> descendants(tree.size(), 0);
    for (const auto& node : tree.nodes()) {
      auto cur = node.parent_id;
      while (cur) {
        ++descendants[*cur];
        cur = tree.node(*cur).parent_id;
      }
    }
    std::uint64_t total = 0;
    for (const auto& node : tree.nodes()) {
      if (node.visit_count != 1 + descendants[node.id]) {
        ok = false;
        detail = "visit count mismatch at node " + std::to_string(node.id);
        break;
      }
      total += node.visit_count;
    }
    if (ok && total != tree.total_visits()) {
      ok = false;
      detail = "N_total mismatch";
    }

    if (ok) {
      // Rank table vs brute-force stable sort.
      const search::RankTable ranks = search::compute_rank_scores(tree);
      std::vector<search::NodeId> order(tree.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](search::NodeId a, search::NodeId b) {
                         return tree.node(a).task_score < tree.node(b).task_score;
                       });
      for (std::size_t i = 0; i < order.size(); ++i) {
        const double expected =
            tree.size() > 1
                ? static_cast<double>(i) / static_cast<double>(tree.size() - 1)
                : 1.0;
        if (ranks[order[i]].rank != i + 1 ||
            ranks[order[i]].rank_score != expected) {
          ok = false;
          detail = "rank mismatch in sequence " + std::to_string(sequence);
          break;
        }
      }
    }
  }
  const double secs = elapsed_s(start);
  if (ok && secs >= 10.0) {
    ok = false;
    detail = "too slow";
  }
  std::ostringstream summary;
  summary << "1000 randomized sequences, " << secs << " s";
  report(1, "tree-mechanics-oracle", ok, ok ? summary.str() : detail);
}

// --------------------------------------------------------------------------
// 2. PUCT argmax invariance under strictly increasing transforms
// --------------------------------------------------------------------------
void criterion_2() {
  Rng rng(77);
  const std::vector<std::function<double(double)>> transforms = {
      [](double x) { return 3.0 * x + 11.0; },
      [](double x) { return std::atan(x); },
      [](double x) { return x * x * x + x; },
      [](double x) { return std::exp(x / 10.0); },
  };
  bool ok = true;
  std::string detail;
  for (int trial = 0; trial < 200 && ok; ++trial) {
    search::SearchTree tree =
        search::init_tree(tag_candidate(0), rng.next_double() * 10 - 5, 1.0, trial);
    const int inserts = 1 + static_cast<int>(rng.next_below(60));
    for (int i = 0; i < inserts; ++i) {
      tree.expand(static_cast<search::NodeId>(rng.next_below(tree.size())),
                  tag_candidate(i), rng.next_double() * 10 - 5);
    }
    const search::NodeId base = search::select_node(tree, search::compute_rank_scores(tree));

    const auto& transform = transforms[rng.next_below(transforms.size())];
    search::SearchTree mapped = search::init_tree(
        tree.node(0).candidate, transform(tree.node(0).task_score), 1.0, trial);
    for (std::size_t i = 1; i < tree.size(); ++i) {
      const auto& node = tree.node(static_cast<search::NodeId>(i));
      mapped.expand(*node.parent_id, node.candidate, transform(node.task_score));
    }
    const search::NodeId after =
        search::select_node(mapped, search::compute_rank_scores(mapped));
    if (after != base) {
      ok = false;
      detail = "selection changed in trial " + std::to_string(trial);
    }
  }
  report(2, "puct-argmax-invariance", ok,
         ok ? "200 random trees, 4 transform families" : detail);
}

// --------------------------------------------------------------------------
// 3. search effectiveness on the synthetic task
// --------------------------------------------------------------------------
void criterion_3() {
  const auto start = std::chrono::steady_clock::now();
  const tasks::ScorableTask task = tasks::make_synthetic_task(4);
  int converged = 0;
  bool monotone = true;
  double worst_best = -1e18;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    gen::Generator generator(gen::GeneratorHandle::mutator(task.mutation_schedule));
    search::GenerateFn generate = [&generator](const search::SearchNode& parent,
                                               const gen::AdviceBundle& advice,
                                               std::uint64_t iter_seed) {
      search::GenerationOutcome outcome;
      outcome.candidate =
          generator.generate(parent.candidate, advice, iter_seed).candidate;
      return outcome;
    };
    search::ExecuteFn execute = [&task](const gen::Candidate& candidate,
                                        search::NodeId) {
      sandbox::ExecutionRecord rec;
      rec.score = task.contract.config_scorer(candidate.config());
      rec.status = sandbox::Status::ok;
      return rec;
    };
    search::RunParams params;
    params.budget = 500;
    params.seed = seed;
    const double root_score =
        task.contract.config_scorer(task.root_candidate.config());
    const search::SearchTree tree = search::run_search(
        task.root_candidate, root_score, {}, generate, execute, params);

    const double best = tree.node(search::best_solution(tree)).task_score;
    worst_best = std::max(worst_best == -1e18 ? best : std::min(worst_best, best),
                          -1e18);
    if (best >= -0.01) ++converged;
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& point : search::breakthrough_series(tree)) {
      if (point.max_score < prev) monotone = false;
      prev = point.max_score;
    }
  }
  const double secs = elapsed_s(start);
  const bool ok = converged >= 9 && monotone && secs < 30.0;
  std::ostringstream detail;
  detail << converged << "/10 seeds within 0.01 of the optimum, monotone="
         << (monotone ? "yes" : "no") << ", " << secs << " s";
  report(3, "synthetic-search-effectiveness", ok, detail.str());
}

// --------------------------------------------------------------------------
// 4. quadrature benchmark: test split + closed-form smoke set
// --------------------------------------------------------------------------
void criterion_4() {
  const auto start = std::chrono::steady_clock::now();
  const quad::SegmentScheme scheme;  // defaults
  const double tol = 1e-6;

  const auto rows = tasks::eval_integrals("test", scheme, tol);
  int solved = 0;
  for (const auto& row : rows) {
    if (row.fractional_error < 0.03) ++solved;
  }

  // Closed-form smoke set: Fresnel, Dirichlet, damped exponentials and
  // other elementary shapes with known values.
  constexpr double kPi = 3.14159265358979323846;
  struct Smoke {
    const char* name;
    quad::Integrand f;
    double a;
    double expected;
  };
  const std::vector<Smoke> smoke = {
      {"fresnel-sin", [](double x) { return std::sin(x * x); }, 0.0, std::sqrt(kPi / 8)},
      {"fresnel-cos", [](double x) { return std::cos(x * x); }, 0.0, std::sqrt(kPi / 8)},
      {"dirichlet", [](double x) { return x == 0 ? 1.0 : std::sin(x) / x; }, 0.0, kPi / 2},
      {"dirichlet-3x", [](double x) { return x == 0 ? 3.0 : std::sin(3 * x) / x; }, 0.0, kPi / 2},
      {"exp-decay", [](double x) { return std::exp(-x); }, 0.0, 1.0},
      {"exp-decay-2", [](double x) { return std::exp(-2.0 * x); }, 0.0, 0.5},
      {"damped-cos", [](double x) { return std::exp(-x) * std::cos(x); }, 0.0, 0.5},
      {"damped-sin", [](double x) { return std::exp(-x) * std::sin(x); }, 0.0, 0.5},
      {"damped-sin-3", [](double x) { return std::exp(-0.5 * x) * std::sin(3 * x); }, 0.0, 3.0 / 9.25},
      {"gauss", [](double x) { return std::exp(-x * x); }, 0.0, std::sqrt(kPi) / 2},
      {"lorentz", [](double x) { return 1.0 / (1.0 + x * x); }, 0.0, kPi / 2},
      {"lorentz-shift", [](double x) { return 1.0 / (4.0 + x * x); }, 1.0, (kPi / 2 - std::atan(0.5)) / 2},
      // cos(2)(pi/2 - Si(2)) + sin(2) Ci(2), frozen from a 20-digit oracle
      {"sin-over-1px", [](double x) { return std::sin(2 * x) / (1.0 + x); }, 0.0, 0.39902098859418384689},
      {"cos-lorentz", [](double x) { return std::cos(x) / (1.0 + x * x); }, 0.0, kPi / (2 * std::exp(1.0))},
      {"x-exp", [](double x) { return x * std::exp(-x); }, 0.0, 1.0},
      {"x2-exp", [](double x) { return x * x * std::exp(-x); }, 0.0, 2.0},
      {"sin2-over-x2", [](double x) { return x == 0 ? 1.0 : std::pow(std::sin(x) / x, 2); }, 0.0, kPi / 2},
      {"chirp-tail", [](double x) { return std::sin(2.0 * x * x); }, 0.0, 0.5 * std::sqrt(kPi / 4)},
      {"alt-exp", [](double x) { return std::exp(-x / 3.0) * std::cos(2 * x); }, 0.0, (1.0 / 3.0) / (1.0 / 9.0 + 4.0)},
  };
  int smoke_solved = 0;
  for (const auto& s : smoke) {
    const quad::QuadResult r = quad::integrate_oscillatory(s.f, s.a, scheme, tol);
    if (std::fabs(r.value - s.expected) / std::fabs(s.expected) < 0.03) {
      ++smoke_solved;
    } else {
      std::printf("  smoke miss: %s got %.10g want %.10g\n", s.name, r.value,
                  s.expected);
    }
  }
  const double secs = elapsed_s(start);
  const bool ok = solved >= 15 && smoke_solved == static_cast<int>(smoke.size()) &&
                  secs < 60.0;
  std::ostringstream detail;
  detail << solved << "/19 held-out integrals < 3% error, " << smoke_solved << "/"
         << smoke.size() << " smoke set, " << secs << " s";
  report(4, "quadrature-benchmark", ok, detail.str());
}

// --------------------------------------------------------------------------
// 5. drop-in property on smooth integrands
// --------------------------------------------------------------------------
void criterion_5() {
  Rng rng(606);
  const quad::SegmentScheme scheme;
  const double tol = 1e-6;
  int checked = 0;
  bool ok = true;
  std::string detail;
  while (checked < 50) {
    // Random smooth decaying integrands: sums of damped exponentials and
    // gentle rational envelopes.
    const double a1 = 0.3 + rng.next_double() * 2.0;
    const double a2 = 0.3 + rng.next_double() * 2.0;
    const double w1 = rng.next_double() * 1.5;
    const double c1 = 0.5 + rng.next_double() * 2.0;
    const double amp = 0.2 + rng.next_double() * 3.0;
    quad::Integrand f = [=](double x) {
      return amp * std::exp(-a1 * x) * std::cos(w1 * x) +
             std::exp(-a2 * x) / (c1 + x);
    };
    const quad::QuadResult direct =
        quad::baseline_quad(f, 0.0, std::numeric_limits<double>::infinity(), tol, tol);
    if (!quad::baseline_accepted(direct)) continue;  // criterion scopes to accepted baselines
    ++checked;
    const quad::QuadResult combined = quad::integrate_oscillatory(f, 0.0, scheme, tol);
    if (combined.method_used != quad::Method::baseline ||
        combined.value != direct.value) {
      ok = false;
      detail = "mismatch on integrand " + std::to_string(checked);
      break;
    }
  }
  report(5, "drop-in-baseline", ok,
         ok ? "50 smooth integrands, bit-for-bit baseline equality" : detail);
}

// --------------------------------------------------------------------------
// 6. Euler acceleration vs a high-precision oracle
// --------------------------------------------------------------------------
void criterion_6() {
  // Oracle in long double: raw partial sums and the reference ln 2.
  std::vector<double> terms;
  long double raw = 0.0L;
  for (int k = 0; k < 12; ++k) {
    const long double term = (k % 2 == 0 ? 1.0L : -1.0L) / (k + 1);
    raw += term;
    terms.push_back(static_cast<double>(term));
  }
  const long double ln2 = std::log(2.0L);
  const quad::EulerResult accelerated = quad::euler_accelerate(terms);
  const double accel_err = static_cast<double>(
      std::fabs(static_cast<long double>(accelerated.estimate) - ln2));
  const double raw_err = static_cast<double>(std::fabs(raw - ln2));
  const bool ok = accel_err < 1e-6 && raw_err > 3e-2;
  std::ostringstream detail;
  detail << "accelerated error " << accel_err << ", raw 12-term error "
         << raw_err;
  report(6, "euler-acceleration-ln2", ok, detail.str());
}

// --------------------------------------------------------------------------
// 7. forecaster recovery and MASE anchor
// --------------------------------------------------------------------------
void criterion_7() {
  const auto start = std::chrono::steady_clock::now();
  constexpr std::int64_t kDay = 86400;
  constexpr std::int64_t kStart = 1704067200;

  // Noiseless level + linear trend + period-7 seasonality. The pattern has
  // zero mean and zero first moment per cycle, so the pipeline's stages
  // (median base, least-squares line, phase means) reconstruct it exactly.
  const double pattern[7] = {1, -2, 1, 0, 0, 0, 0};
  std::vector<std::int64_t> ts;
  std::vector<double> values;
  const int n = 7 * 20;
  for (int i = 0; i < n; ++i) {
    ts.push_back(kStart + kDay * i);
    values.push_back(30.0 + 0.25 * i + 2.0 * pattern[i % 7]);
  }
  const forecast::SeriesView series = forecast::make_series(ts, values);
  const forecast::ForecastConfig config =
      forecast::config_from_json(nlohmann::json::parse(R"({
        "name": "recovery", "transform_log": false, "non_negative": false,
        "components": [
          {"type": "base", "method": "median_all"},
          {"type": "trend", "method": "polynomial", "degree": 1, "damping_factor": 1.0},
          {"type": "seasonal", "method": "average", "window_multiplier": 20.0}]})"));
  const forecast::ForecastResult result = forecast::forecast(series, config, 14);
  double max_err = 0.0;
  for (int h = 1; h <= 14; ++h) {
    const int i = n - 1 + h;
    const double expected = 30.0 + 0.25 * i + 2.0 * pattern[i % 7];
    max_err = std::max(max_err,
                       std::fabs(result.values[static_cast<std::size_t>(h - 1)] - expected));
  }

  // Seasonal-naive config on seasonal-naive-generated data: MASE near 1.
  Rng rng(99991);
  const double base_pattern[7] = {12, 7, 9, 15, 4, 20, 11};
  std::vector<std::int64_t> ts2;
  std::vector<double> noisy;
  const int train_len = 7 * 300;
  const int horizon = 7 * 40;
  for (int i = 0; i < train_len + horizon; ++i) {
    ts2.push_back(kStart + kDay * i);
    noisy.push_back(base_pattern[i % 7] + (rng.next_double() - 0.5));
  }
  forecast::SeriesView training;
  training.timestamps.assign(ts2.begin(), ts2.begin() + train_len);
  training.values.assign(noisy.begin(), noisy.begin() + train_len);
  training.inferred_frequency = kDay;
  const forecast::ForecastResult naive =
      forecast::forecast(training, forecast::builtin_configs()[0], horizon);
  std::vector<double> actual(noisy.begin() + train_len, noisy.end());
  const double mase_value =
      forecast::mase(naive.values, actual, training, 7);

  const double secs = elapsed_s(start);
  const bool ok = max_err < 1e-6 && std::fabs(mase_value - 1.0) < 0.05 &&
                  secs < 5.0;
  std::ostringstream detail;
  detail << "recovery max error " << max_err << ", seasonal-naive MASE "
         << mase_value << ", " << secs << " s";
  report(7, "forecaster-recovery-and-mase", ok, detail.str());
}

// --------------------------------------------------------------------------
// 8. integral score spot values and scale invariance
// --------------------------------------------------------------------------
void criterion_8() {
  bool ok = std::fabs(tasks::integral_score(5.0, 5.0)) < 1e-12 &&
            std::fabs(tasks::integral_score(10.0, 5.0) + std::log(2.0)) < 1e-12;
  std::string detail = "spot values exact";
  if (ok) {
    Rng rng(31);
    for (int i = 0; i < 1000; ++i) {
      const double answer =
          (0.05 + rng.next_double() * 10) * (rng.next_bool() ? 1 : -1);
      const double response = answer + (rng.next_double() - 0.5) * 8;
      const double c = (0.01 + rng.next_double() * 50) * (rng.next_bool() ? 1 : -1);
      const double direct = tasks::integral_score(response, answer);
      const double scaled = tasks::integral_score(c * response, c * answer);
      if (std::fabs(direct - scaled) > 1e-12 * std::max(1.0, std::fabs(direct))) {
        ok = false;
        detail = "scale invariance violated at triple " + std::to_string(i);
        break;
      }
    }
    if (ok) detail += "; 1000 random scale triples invariant";
  }
  report(8, "integral-score-function", ok, detail);
}

// --------------------------------------------------------------------------
// 9. determinism of full cmd_run invocations
// --------------------------------------------------------------------------
void criterion_9() {
  const fs::path root_a =
      fs::temp_directory_path() / ("scorch_accept_a_" + std::to_string(::getpid()));
  const fs::path root_b =
      fs::temp_directory_path() / ("scorch_accept_b_" + std::to_string(::getpid()));
  fs::remove_all(root_a);
  fs::remove_all(root_b);

  cli::RunArgs args;
  args.task = "synthetic";
  args.budget = 120;
  args.seed = 20250810;

  std::ostringstream out, err;
  args.output_root = root_a.string();
  const int rc1 = cli::cmd_run(args, out, err);
  args.output_root = root_b.string();
  const int rc2 = cli::cmd_run(args, out, err);

  bool ok = rc1 == 0 && rc2 == 0;
  std::string detail = "two cmd_run invocations";
  if (ok) {
    const std::string rel = "runs/synthetic-s20250810-b120/";
    const std::string tree_a = cli::RunStore::read_file(root_a / (rel + "tree.json"));
    const std::string tree_b = cli::RunStore::read_file(root_b / (rel + "tree.json"));
    const std::string bt_a =
        cli::RunStore::read_file(root_a / (rel + "breakthroughs.csv"));
    const std::string bt_b =
        cli::RunStore::read_file(root_b / (rel + "breakthroughs.csv"));
    ok = tree_a == tree_b && bt_a == bt_b;
    detail = ok ? "tree and breakthrough exports byte-identical"
                : "exports differ between runs";
  } else {
    detail = "cmd_run failed: " + err.str();
  }
  fs::remove_all(root_a);
  fs::remove_all(root_b);
  report(9, "cmd-run-determinism", ok, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures > 0) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
