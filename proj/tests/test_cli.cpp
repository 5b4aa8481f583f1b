#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "scorch/cli/commands.hpp"
#include "scorch/cli/run_store.hpp"
#include "scorch/forecast/series.hpp"

using namespace scorch;
using namespace scorch::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_root(const std::string& tag) {
  const fs::path root = fs::temp_directory_path() /
                        ("scorch_cli_test_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  return root;
}

}  // namespace

TEST_CASE("cmd_run writes a complete run directory") {
  const fs::path root = fresh_root("run");
  RunArgs args;
  args.task = "synthetic";
  args.budget = 50;
  args.seed = 7;
  args.output_root = root.string();

  std::ostringstream out, err;
  REQUIRE(cmd_run(args, out, err) == 0);
  INFO(err.str());

  const fs::path run_dir = root / "runs" / "synthetic-s7-b50";
  CHECK(fs::exists(run_dir / "manifest.json"));
  CHECK(fs::exists(run_dir / "tree.json"));
  CHECK(fs::exists(run_dir / "breakthroughs.csv"));

  const json tree = json::parse(RunStore::read_file(run_dir / "tree.json"));
  std::string error;
  CHECK(validate_tree_export(tree, &error));
  CHECK(tree["nodes"].size() == 51);  // budget + root

  // Breakthrough export: header + one row per node.
  std::istringstream csv(RunStore::read_file(run_dir / "breakthroughs.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "node_count,max_score,is_breakthrough");
  int rows = 0;
  double prev_max = -std::numeric_limits<double>::infinity();
  while (std::getline(csv, line)) {
    ++rows;
    const auto first_comma = line.find(',');
    const auto second_comma = line.find(',', first_comma + 1);
    const double max_score =
        std::stod(line.substr(first_comma + 1, second_comma - first_comma - 1));
    CHECK(max_score >= prev_max);
    prev_max = max_score;
  }
  CHECK(rows == 51);

  const json manifest = json::parse(RunStore::read_file(run_dir / "manifest.json"));
  CHECK(manifest["run_id"] == "synthetic-s7-b50");
  CHECK(manifest.contains("started_at"));
  CHECK(manifest.contains("finished_at"));
  CHECK(manifest.contains("best_score"));
}

TEST_CASE("identical seeds produce byte-identical exports") {
  const fs::path root_a = fresh_root("det_a");
  const fs::path root_b = fresh_root("det_b");
  RunArgs args;
  args.task = "synthetic";
  args.budget = 40;
  args.seed = 123;

  std::ostringstream out, err;
  args.output_root = root_a.string();
  REQUIRE(cmd_run(args, out, err) == 0);
  args.output_root = root_b.string();
  REQUIRE(cmd_run(args, out, err) == 0);

  const std::string rel = "runs/synthetic-s123-b40";
  CHECK(RunStore::read_file(root_a / rel / "tree.json") ==
        RunStore::read_file(root_b / rel / "tree.json"));
  CHECK(RunStore::read_file(root_a / rel / "breakthroughs.csv") ==
        RunStore::read_file(root_b / rel / "breakthroughs.csv"));
}

TEST_CASE("unknown tasks fail with a diagnostic on stderr") {
  RunArgs args;
  args.task = "not-a-task";
  args.output_root = fresh_root("bad").string();
  std::ostringstream out, err;
  CHECK(cmd_run(args, out, err) != 0);
  CHECK(err.str().find("unknown task") != std::string::npos);
}

TEST_CASE("duplicate run ids are rejected") {
  const fs::path root = fresh_root("dup");
  RunArgs args;
  args.task = "synthetic";
  args.budget = 2;
  args.output_root = root.string();
  std::ostringstream out, err;
  REQUIRE(cmd_run(args, out, err) == 0);
  CHECK(cmd_run(args, out, err) != 0);
  CHECK(err.str().find("already exists") != std::string::npos);
}

TEST_CASE("cmd_export re-emits stored artifacts idempotently") {
  const fs::path root = fresh_root("export");
  RunArgs run_args;
  run_args.task = "synthetic";
  run_args.budget = 10;
  run_args.seed = 2;
  run_args.output_root = root.string();
  std::ostringstream run_out, err;
  REQUIRE(cmd_run(run_args, run_out, err) == 0);

  ExportArgs export_args;
  export_args.run_id = "synthetic-s2-b10";
  export_args.output_root = root.string();

  std::ostringstream tree1, tree2;
  CHECK(cmd_export(export_args, tree1, err) == 0);
  CHECK(cmd_export(export_args, tree2, err) == 0);
  CHECK(tree1.str() == tree2.str());
  CHECK(tree1.str() ==
        RunStore::read_file(root / "runs" / export_args.run_id / "tree.json"));

  export_args.what = "breakthroughs";
  std::ostringstream bt;
  CHECK(cmd_export(export_args, bt, err) == 0);
  CHECK(bt.str().rfind("node_count,max_score,is_breakthrough\n", 0) == 0);

  export_args.run_id = "missing-run";
  export_args.what = "tree";
  std::ostringstream out3, err3;
  CHECK(cmd_export(export_args, out3, err3) != 0);
}

TEST_CASE("eval-integrals emits the per-integral table") {
  EvalIntegralsArgs args;
  args.split = "train";
  args.ids = {"445.001", "477.049"};
  args.tol = 1e-6;
  std::ostringstream out, err;
  REQUIRE(cmd_eval_integrals(args, out, err) == 0);
  const std::string text = out.str();
  CHECK(text.find("spec_id,value,reference,fractional_error,method_used") !=
        std::string::npos);
  CHECK(text.find("445.001") != std::string::npos);
  CHECK(text.find("segmented_euler") != std::string::npos);
  CHECK(text.find("# aggregate_score") != std::string::npos);

  EvalIntegralsArgs bad;
  bad.split = "everything";
  std::ostringstream out2, err2;
  CHECK(cmd_eval_integrals(bad, out2, err2) != 0);
}

TEST_CASE("forecast command scores configs and emits forecasts") {
  const fs::path root = fresh_root("forecast");
  const fs::path data = root / "series.csv";
  {
    std::ofstream csv(data);
    csv << "timestamp,value\n";
    for (int i = 0; i < 140; ++i) {
      const std::int64_t ts = 1704067200 + 86400LL * i;
      csv << scorch::forecast::format_timestamp(ts) << ","
          << (20.0 + (i % 7) * 2.0) << "\n";
    }
  }
  ForecastArgs args;
  args.data_file = data.string();
  args.horizon = 7;
  std::ostringstream out, err;
  REQUIRE(cmd_forecast(args, out, err) == 0);
  const std::string text = out.str();
  CHECK(text.find("config,validation_mase") != std::string::npos);
  CHECK(text.find("seasonal_naive_baseline") != std::string::npos);
  CHECK(text.find("# selected:") != std::string::npos);
  CHECK(text.find("timestamp,forecast") != std::string::npos);

  ForecastArgs missing;
  missing.data_file = (root / "nope.csv").string();
  std::ostringstream out2, err2;
  CHECK(cmd_forecast(missing, out2, err2) != 0);
}

TEST_CASE("tasks list names the built-ins") {
  std::ostringstream out;
  CHECK(cmd_tasks_list(out) == 0);
  CHECK(out.str().find("synthetic") != std::string::npos);
  CHECK(out.str().find("integrals") != std::string::npos);
  CHECK(out.str().find("forecast") != std::string::npos);
}
