#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scorch/cli/commands.hpp"
#include "scorch/cli/run_store.hpp"

int main(int argc, char** argv) {
  CLI::App app{"scorch: score-driven tree search over candidate solutions"};
  app.require_subcommand(1);

  scorch::cli::RunArgs run_args;
  run_args.output_root = scorch::cli::default_output_root();
  double wall_time_s = 300.0;
  double max_output_kb = 256.0;

  auto* run = app.add_subcommand("run", "Run a search on a built-in task");
  run->add_option("--task", run_args.task, "Task id (see `tasks list`)");
  run->add_option("--dimension", run_args.dimension,
                  "Dimension of the synthetic task");
  run->add_option("--generator", run_args.generator,
                  "mutator | exec:CMD ARG... | http:HOST:PORT[/PATH]");
  run->add_option("--budget", run_args.budget, "Search iterations")
      ->check(CLI::PositiveNumber);
  run->add_option("--c-puct", run_args.c_puct, "Exploration constant");
  run->add_option("--seed", run_args.seed, "Random seed");
  run->add_option("--wall-time-s", wall_time_s, "Per-candidate wall limit");
  run->add_option("--max-output-kb", max_output_kb,
                  "Captured output cap per stream");
  run->add_option("--generator-timeout-s", run_args.generator_timeout_s,
                  "External generator timeout");
  run->add_option("--output-root", run_args.output_root,
                  "Run artifact root (env SCORCH_OUTPUT_ROOT)");
  run->add_option("--run-id", run_args.run_id,
                  "Run id (default <task>-s<seed>-b<budget>)");
  run->add_option("--idea", run_args.idea_files,
                  "File with one pre-summarized research idea (repeatable)");
  run->add_option("--recombine", run_args.recombine_files,
                  "Two files with parent-strategy summaries")
      ->expected(2);

  scorch::cli::ExportArgs export_args;
  export_args.output_root = run_args.output_root;
  auto* exp = app.add_subcommand("export", "Re-emit stored run artifacts");
  exp->add_option("run_id", export_args.run_id, "Run id")->required();
  exp->add_option("--what", export_args.what, "tree | breakthroughs");
  exp->add_option("--output-root", export_args.output_root, "Run artifact root");

  scorch::cli::EvalIntegralsArgs eval_args;
  std::string scheme_text;
  auto* ev = app.add_subcommand("eval-integrals",
                                "Evaluate the oscillatory-integral benchmark");
  ev->add_option("--split", eval_args.split, "train | test | all");
  ev->add_option("--scheme", scheme_text,
                 "L0,r,K (first length, growth ratio, max segments)");
  ev->add_option("--tol", eval_args.tol, "Acceleration stability tolerance");
  ev->add_option("--ids", eval_args.ids, "Only these spec ids")->delimiter(',');

  scorch::cli::ForecastArgs fc_args;
  auto* fc = app.add_subcommand("forecast",
                                "Forecast a series with preset configurations");
  fc->add_option("--data", fc_args.data_file, "CSV with header timestamp,value")
      ->required();
  fc->add_option("--horizon", fc_args.horizon, "Forecast steps")
      ->check(CLI::PositiveNumber);
  fc->add_option("--configs", fc_args.configs, "builtin | JSON file");
  fc->add_option("--validation-fraction", fc_args.validation_fraction,
                 "Tail fraction used for config selection");

  auto* tasks_cmd = app.add_subcommand("tasks", "Task registry");
  auto* tasks_list = tasks_cmd->add_subcommand("list", "List built-in tasks");

  CLI11_PARSE(app, argc, argv);

  run_args.limits.wall_time_s = wall_time_s;
  run_args.limits.output_bytes =
      static_cast<std::size_t>(max_output_kb * 1024.0);

  if (!scheme_text.empty()) {
    scorch::quad::SegmentScheme& scheme = eval_args.scheme;
    if (std::sscanf(scheme_text.c_str(), "%lf,%lf,%d", &scheme.first_length,
                    &scheme.growth_ratio, &scheme.max_segments) != 3) {
      std::cerr << "error: --scheme expects L0,r,K\n";
      return 2;
    }
  }

  if (run->parsed()) {
    return scorch::cli::cmd_run(run_args, std::cout, std::cerr);
  }
  if (exp->parsed()) {
    return scorch::cli::cmd_export(export_args, std::cout, std::cerr);
  }
  if (ev->parsed()) {
    return scorch::cli::cmd_eval_integrals(eval_args, std::cout, std::cerr);
  }
  if (fc->parsed()) {
    return scorch::cli::cmd_forecast(fc_args, std::cout, std::cerr);
  }
  if (tasks_cmd->parsed() && tasks_list->parsed()) {
    return scorch::cli::cmd_tasks_list(std::cout);
  }
  std::cerr << "error: no subcommand\n";
  return 2;
}
