#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scorch/quadrature.hpp"
#include "scorch/sandbox.hpp"

namespace scorch::cli {

struct RunArgs {
  std::string task = "synthetic";
  int dimension = 4;
  std::string generator = "mutator";  // mutator | exec:CMD... | http:HOST:PORT[/PATH]
  std::uint64_t budget = 100;
  double c_puct = 1.0;
  std::uint64_t seed = 0;
  sandbox::Limits limits;
  double generator_timeout_s = 120.0;
  std::string output_root;
  std::string run_id;                      // empty -> "<task>-s<seed>-b<budget>"
  std::vector<std::string> idea_files;     // pre-summarized idea texts
  std::vector<std::string> recombine_files;  // exactly 0 or 2 summaries
};

struct ExportArgs {
  std::string run_id;
  std::string what = "tree";  // tree | breakthroughs
  std::string output_root;
};

struct EvalIntegralsArgs {
  std::string split = "test";
  quad::SegmentScheme scheme;
  double tol = 1e-6;
  std::vector<std::string> ids;  // optional filter
};

struct ForecastArgs {
  std::string data_file;
  int horizon = 14;
  std::string configs = "builtin";  // "builtin" or a JSON file
  double validation_fraction = 0.1;
};

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err);
int cmd_export(const ExportArgs& args, std::ostream& out, std::ostream& err);
int cmd_eval_integrals(const EvalIntegralsArgs& args, std::ostream& out,
                       std::ostream& err);
int cmd_forecast(const ForecastArgs& args, std::ostream& out,
                 std::ostream& err);
int cmd_tasks_list(std::ostream& out);

}  // namespace scorch::cli
