#include "scorch/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "scorch/cli/run_store.hpp"
#include "scorch/forecast/forecaster.hpp"
#include "scorch/generator.hpp"
#include "scorch/search.hpp"
#include "scorch/tasks.hpp"

namespace scorch::cli {

using nlohmann::json;

namespace {

std::string now_rfc3339() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// "mutator", "exec:CMD ARG...", or "http:HOST:PORT[/PATH]".
gen::GeneratorHandle parse_generator(const std::string& descriptor,
                                     const gen::MutationSchedule& schedule,
                                     double timeout_s) {
  if (descriptor == "mutator") {
    return gen::GeneratorHandle::mutator(schedule);
  }
  if (descriptor.rfind("exec:", 0) == 0) {
    gen::ProcessSpec spec;
    spec.timeout_s = timeout_s;
    std::istringstream words(descriptor.substr(5));
    std::string word;
    while (words >> word) spec.argv.push_back(word);
    if (spec.argv.empty()) {
      throw std::invalid_argument("exec: generator needs a command");
    }
    return gen::GeneratorHandle::external(spec);
  }
  if (descriptor.rfind("http:", 0) == 0) {
    std::string rest = descriptor.substr(5);
    gen::HttpSpec spec;
    spec.timeout_s = timeout_s;
    const auto slash = rest.find('/');
    if (slash != std::string::npos) {
      spec.path = rest.substr(slash);
      rest = rest.substr(0, slash);
    }
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("http: generator needs HOST:PORT");
    }
    spec.host = rest.substr(0, colon);
    spec.port = std::stoi(rest.substr(colon + 1));
    return gen::GeneratorHandle::external(spec);
  }
  throw std::invalid_argument("unknown generator descriptor: " + descriptor);
}

std::string format_double(double v, int precision = 12) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

}  // namespace

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
  tasks::ScorableTask task;
  try {
    task = tasks::make_task(args.task, args.dimension);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string output_root =
      args.output_root.empty() ? default_output_root() : args.output_root;
  const std::string run_id =
      args.run_id.empty() ? args.task + "-s" + std::to_string(args.seed) +
                                "-b" + std::to_string(args.budget)
                          : args.run_id;

  try {
    RunStore store(output_root, run_id);
    store.create();

    std::vector<std::string> ideas;
    for (const auto& path : args.idea_files) {
      ideas.push_back(read_text_file(path));
    }
    std::optional<std::pair<std::string, std::string>> recombination;
    if (!args.recombine_files.empty()) {
      if (args.recombine_files.size() != 2) {
        throw std::invalid_argument("recombination needs exactly two summary files");
      }
      recombination = {read_text_file(args.recombine_files[0]),
                       read_text_file(args.recombine_files[1])};
    }

    json manifest;
    manifest["run_id"] = run_id;
    manifest["task_id"] = task.task_id;
    manifest["generator"] = args.generator;
    manifest["budget"] = args.budget;
    manifest["c_puct"] = args.c_puct;
    manifest["seed"] = args.seed;
    manifest["limits"] = {{"wall_time_s", args.limits.wall_time_s},
                          {"max_output_bytes", args.limits.output_bytes}};
    manifest["started_at"] = now_rfc3339();
    manifest["artifacts"] = {{"tree", "tree.json"},
                             {"breakthroughs", "breakthroughs.csv"}};
    store.write_manifest(manifest);

    gen::Generator generator(
        parse_generator(args.generator, task.mutation_schedule,
                        args.generator_timeout_s));

    // Root evaluation: the starter candidate goes through the same sandbox.
    sandbox::ExecutionRecord root_eval =
        sandbox::execute(task.root_candidate, task.contract, args.limits,
                         store.node_scratch(0));
    const double root_score = root_eval.status == sandbox::Status::ok
                                  ? root_eval.score
                                  : search::kNegInf;

    search::RunParams params;
    params.budget = args.budget;
    params.c_puct = args.c_puct;
    params.seed = args.seed;
    params.advice = gen::build_advice(task.description, ideas, recombination);

    constexpr int kGenerationRetries = 3;
    search::GenerateFn generate = [&](const search::SearchNode& parent,
                                      const gen::AdviceBundle& advice,
                                      std::uint64_t seed) {
      search::GenerationOutcome outcome;
      std::string last_error;
      for (int attempt = 0; attempt < kGenerationRetries; ++attempt) {
        try {
          gen::GenerateResult result =
              generator.generate(parent.candidate, advice, seed + attempt);
          outcome.candidate = std::move(result.candidate);
          return outcome;
        } catch (const gen::GenerationError& e) {
          last_error = e.what();
        }
      }
      outcome.failed = true;
      outcome.failure_reason = last_error;
      return outcome;
    };

    search::ExecuteFn execute = [&](const gen::Candidate& candidate,
                                    search::NodeId node_id) {
      return sandbox::execute(candidate, task.contract, args.limits,
                              store.node_scratch(node_id));
    };

    search::SearchTree tree = search::run_search(
        task.root_candidate, root_score, root_eval, generate, execute, params);

    store.write_tree(tree_export_json(tree, run_id, task.task_id));
    store.write_breakthroughs(breakthroughs_csv(tree));

    const search::NodeId best = search::best_solution(tree);
    manifest["finished_at"] = now_rfc3339();
    manifest["nodes"] = tree.size();
    manifest["best_node"] = best;
    manifest["best_score"] = std::isfinite(tree.node(best).task_score)
                                 ? json(tree.node(best).task_score)
                                 : json("-inf");
    store.write_manifest(manifest);

    out << "run " << run_id << ": " << tree.size() << " nodes, best score "
        << format_double(tree.node(best).task_score) << " (node " << best
        << ")\n";
    out << "artifacts: " << store.run_dir().string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_export(const ExportArgs& args, std::ostream& out, std::ostream& err) {
  const std::string output_root =
      args.output_root.empty() ? default_output_root() : args.output_root;
  try {
    RunStore store(output_root, args.run_id);
    if (args.what == "tree") {
      const std::string bytes =
          RunStore::read_file(store.run_dir() / "tree.json");
      std::string error;
      if (!validate_tree_export(json::parse(bytes), &error)) {
        err << "error: stored tree export is invalid: " << error << "\n";
        return 1;
      }
      out << bytes;
      return 0;
    }
    if (args.what == "breakthroughs") {
      out << RunStore::read_file(store.run_dir() / "breakthroughs.csv");
      return 0;
    }
    err << "error: unknown export kind: " << args.what << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_eval_integrals(const EvalIntegralsArgs& args, std::ostream& out,
                       std::ostream& err) {
  try {
    auto rows = tasks::eval_integrals(args.split, args.scheme, args.tol);
    if (!args.ids.empty()) {
      std::erase_if(rows, [&](const tasks::IntegralEvalRow& row) {
        return std::find(args.ids.begin(), args.ids.end(), row.spec_id) ==
               args.ids.end();
      });
    }
    if (rows.empty()) {
      err << "error: no integrals matched\n";
      return 2;
    }
    out << "spec_id,value,reference,fractional_error,method_used\n";
    std::vector<double> scores;
    int solved = 0;
    for (const auto& row : rows) {
      out << row.spec_id << ',' << format_double(row.value) << ','
          << format_double(row.reference) << ','
          << format_double(row.fractional_error, 6) << ','
          << (row.method_used == quad::Method::baseline ? "baseline"
                                                        : "segmented_euler")
          << "\n";
      scores.push_back(tasks::integral_score(row.value, row.reference));
      if (row.fractional_error < 0.03) ++solved;
    }
    out << "# solved_within_3pct: " << solved << "/" << rows.size() << "\n";
    out << "# aggregate_score: "
        << format_double(tasks::integral_task_score(scores)) << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_forecast(const ForecastArgs& args, std::ostream& out,
                 std::ostream& err) {
  try {
    const forecast::SeriesView series = forecast::read_series_csv(args.data_file);
    std::vector<forecast::ForecastConfig> configs;
    if (args.configs == "builtin") {
      configs = forecast::builtin_configs();
    } else {
      const json doc = json::parse(read_text_file(args.configs));
      if (doc.is_array()) {
        for (const auto& item : doc) {
          configs.push_back(forecast::config_from_json(item));
        }
      } else {
        configs.push_back(forecast::config_from_json(doc));
      }
    }

    const forecast::SelectResult selected = forecast::select_config(
        series, configs, args.validation_fraction, args.horizon);

    out << "config,validation_mase\n";
    for (std::size_t i = 0; i < configs.size(); ++i) {
      out << configs[i].name << ',';
      if (std::isnan(selected.per_config_mase[i])) {
        out << "failed\n";
      } else {
        out << format_double(selected.per_config_mase[i], 6) << "\n";
      }
    }
    out << "# selected: " << selected.best.name;
    if (selected.used_absolute_error) {
      out << " (absolute-error fallback: constant training series)";
    }
    out << "\n";

    // Final forecast refits the winning config on the full series.
    const forecast::ForecastResult result =
        forecast::forecast(series, selected.best, args.horizon);
    out << "timestamp,forecast\n";
    const std::int64_t last = series.timestamps.back();
    for (int h = 1; h <= args.horizon; ++h) {
      out << forecast::format_timestamp(last + series.inferred_frequency * h)
          << ',' << format_double(result.values[static_cast<std::size_t>(h - 1)], 10)
          << "\n";
    }
    for (const auto& warning : result.warnings) {
      err << "warning: " << warning << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_tasks_list(std::ostream& out) {
  for (const auto& id : tasks::builtin_task_ids()) {
    const tasks::ScorableTask task = tasks::make_task(id);
    out << id << "\t"
        << (task.split_policy == tasks::ScorableTask::SplitPolicy::train_holdout
                ? "train+holdout"
                : "train-only")
        << "\t" << task.description << "\n";
  }
  return 0;
}

}  // namespace scorch::cli
