#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scorch/forecast/forecaster.hpp"
#include "scorch/generator.hpp"
#include "scorch/quadrature.hpp"
#include "scorch/search.hpp"
#include "scorch/tasks.hpp"

namespace py = pybind11;
using namespace scorch;

namespace {

nlohmann::json json_from_text(const std::string& text) {
  return nlohmann::json::parse(text);
}

// Runs the search loop with the deterministic mutator on a built-in task,
// scoring candidates in-process.
search::SearchTree run_builtin_search(const std::string& task_id, int budget,
                                      double c_puct, std::uint64_t seed,
                                      int dimension) {
  const tasks::ScorableTask task = tasks::make_task(task_id, dimension);
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
    rec.status = std::isfinite(rec.score) ? sandbox::Status::ok
                                          : sandbox::Status::bad_output;
    return rec;
  };
  search::RunParams params;
  params.budget = static_cast<std::uint64_t>(budget);
  params.c_puct = c_puct;
  params.seed = seed;
  const double root_score =
      task.contract.config_scorer(task.root_candidate.config());
  return search::run_search(task.root_candidate, root_score, {}, generate,
                            execute, params);
}

}  // namespace

PYBIND11_MODULE(_scorch, m) {
  m.doc() = "Score-driven tree search with built-in numerical solution engines";

  // ---- search -------------------------------------------------------------
  py::class_<search::SearchNode>(m, "SearchNode")
      .def_readonly("id", &search::SearchNode::id)
      .def_property_readonly("parent_id",
                             [](const search::SearchNode& n) -> py::object {
                               if (n.parent_id) return py::int_(*n.parent_id);
                               return py::none();
                             })
      .def_readonly("task_score", &search::SearchNode::task_score)
      .def_readonly("visit_count", &search::SearchNode::visit_count)
      .def_readonly("creation_index", &search::SearchNode::creation_index)
      .def_readonly("depth", &search::SearchNode::depth)
      .def_property_readonly("payload", [](const search::SearchNode& n) {
        return n.candidate.payload;
      });

  py::class_<search::SearchTree>(m, "SearchTree")
      .def(py::init([](const std::string& root_config, double root_score,
                       double c_puct, std::uint64_t seed) {
             return search::SearchTree(
                 gen::Candidate::from_config(json_from_text(root_config)),
                 root_score, c_puct, seed);
           }),
           py::arg("root_config"), py::arg("root_score"),
           py::arg("c_puct") = 1.0, py::arg("seed") = 0)
      .def("expand",
           [](search::SearchTree& tree, search::NodeId parent,
              const std::string& config, double score) {
             return tree.expand(parent,
                                gen::Candidate::from_config(json_from_text(config)),
                                score);
           },
           py::arg("parent_id"), py::arg("config"), py::arg("score"))
      .def("__len__", &search::SearchTree::size)
      .def("node", &search::SearchTree::node, py::return_value_policy::copy)
      .def_property_readonly("total_visits", &search::SearchTree::total_visits)
      .def("rank_scores",
           [](const search::SearchTree& tree) {
             std::vector<double> scores;
             for (const auto& entry : search::compute_rank_scores(tree)) {
               scores.push_back(entry.rank_score);
             }
             return scores;
           })
      .def("select",
           [](const search::SearchTree& tree) {
             return search::select_node(tree, search::compute_rank_scores(tree));
           })
      .def("best", [](const search::SearchTree& tree) {
        return search::best_solution(tree);
      })
      .def("breakthroughs", [](const search::SearchTree& tree) {
        py::list points;
        for (const auto& p : search::breakthrough_series(tree)) {
          points.append(py::make_tuple(p.node_count, p.max_score, p.is_breakthrough));
        }
        return points;
      });

  m.def("run_search", &run_builtin_search, py::arg("task"), py::arg("budget"),
        py::arg("c_puct") = 1.0, py::arg("seed") = 0, py::arg("dimension") = 4,
        "Run the PUCT search with the deterministic mutator on a built-in task");

  // ---- mutation -----------------------------------------------------------
  m.def("mutate_config",
        [](const std::string& config, const std::string& schedule_json,
           std::uint64_t seed) {
          gen::MutationSchedule schedule;
          for (const auto& [key, spec] :
               json_from_text(schedule_json).items()) {
            const std::string law = spec.at("law").get<std::string>();
            gen::KeySchedule ks;
            if (law == "additive" || law == "multiplicative") {
              ks.law = law == "additive" ? gen::KeySchedule::Law::additive
                                         : gen::KeySchedule::Law::multiplicative;
              ks.steps = spec.at("steps").get<std::vector<double>>();
              if (spec.contains("lower")) ks.lower = spec["lower"].get<double>();
              if (spec.contains("upper")) ks.upper = spec["upper"].get<double>();
            } else if (law == "categorical") {
              ks = gen::KeySchedule::categorical(
                  spec.at("choices").get<std::vector<std::string>>());
            } else {
              throw std::invalid_argument("unknown law: " + law);
            }
            schedule[key] = ks;
          }
          const gen::MutationResult r =
              gen::mutate_config(json_from_text(config), schedule, seed);
          return py::make_tuple(r.config.dump(), r.exhausted);
        },
        py::arg("config"), py::arg("schedule"), py::arg("seed"));

  // ---- quadrature -----------------------------------------------------------
  py::class_<quad::SegmentScheme>(m, "SegmentScheme")
      .def(py::init<>())
      .def(py::init([](double first_length, double growth_ratio, int max_segments) {
             return quad::SegmentScheme{first_length, growth_ratio, max_segments};
           }),
           py::arg("first_length"), py::arg("growth_ratio"), py::arg("max_segments"))
      .def_readwrite("first_length", &quad::SegmentScheme::first_length)
      .def_readwrite("growth_ratio", &quad::SegmentScheme::growth_ratio)
      .def_readwrite("max_segments", &quad::SegmentScheme::max_segments);

  py::class_<quad::QuadResult>(m, "QuadResult")
      .def_readonly("value", &quad::QuadResult::value)
      .def_readonly("error_estimate", &quad::QuadResult::error_estimate)
      .def_readonly("segments_used", &quad::QuadResult::segments_used)
      .def_readonly("converged", &quad::QuadResult::converged)
      .def_property_readonly("method_used", [](const quad::QuadResult& r) {
        return r.method_used == quad::Method::baseline ? "baseline"
                                                       : "segmented_euler";
      });

  m.def("baseline_quad",
        [](const std::function<double(double)>& f, double a, double b,
           double abs_tol, double rel_tol) {
          return quad::baseline_quad(f, a, b, abs_tol, rel_tol);
        },
        py::arg("f"), py::arg("a"), py::arg("b"), py::arg("abs_tol") = 1e-10,
        py::arg("rel_tol") = 1e-10);
  m.def("integrate_oscillatory",
        [](const std::function<double(double)>& f, double a,
           const quad::SegmentScheme& scheme, double tol) {
          return quad::integrate_oscillatory(f, a, scheme, tol);
        },
        py::arg("f"), py::arg("a"), py::arg("scheme") = quad::SegmentScheme{},
        py::arg("tol") = 1e-6);
  m.def("euler_accelerate", [](const std::vector<double>& terms) {
    const quad::EulerResult r = quad::euler_accelerate(terms);
    return py::make_tuple(r.estimate, r.stability);
  });
  m.def("segment_bounds", &quad::segment_bounds, py::arg("a"),
        py::arg("scheme"), py::arg("k"));

  // ---- tasks / benchmark ----------------------------------------------------
  m.def("integral_score", &tasks::integral_score, py::arg("response"),
        py::arg("answer"));
  m.def("integral_task_score", [](const std::vector<double>& scores) {
    return tasks::integral_task_score(scores);
  });
  m.def("forecast_task_score", [](const std::vector<double>& mase_values) {
    return tasks::forecast_task_score(mase_values);
  });
  m.def("synthetic_target", &tasks::synthetic_target, py::arg("dimension"));
  m.def("builtin_task_ids", &tasks::builtin_task_ids);
  m.def("eval_integrals",
        [](const std::string& split, const quad::SegmentScheme& scheme,
           double tol) {
          py::list rows;
          for (const auto& row : tasks::eval_integrals(split, scheme, tol)) {
            py::dict d;
            d["spec_id"] = row.spec_id;
            d["value"] = row.value;
            d["reference"] = row.reference;
            d["fractional_error"] = row.fractional_error;
            d["method_used"] = row.method_used == quad::Method::baseline
                                   ? "baseline"
                                   : "segmented_euler";
            rows.append(d);
          }
          return rows;
        },
        py::arg("split") = "test", py::arg("scheme") = quad::SegmentScheme{},
        py::arg("tol") = 1e-6);

  // ---- forecasting ----------------------------------------------------------
  m.def("forecast",
        [](const std::vector<std::int64_t>& timestamps,
           const std::vector<double>& values, const std::string& config_json,
           int horizon) {
          const forecast::SeriesView series =
              forecast::make_series(timestamps, values);
          const forecast::ForecastConfig config =
              forecast::config_from_json(json_from_text(config_json));
          return forecast::forecast(series, config, horizon).values;
        },
        py::arg("timestamps"), py::arg("values"), py::arg("config"),
        py::arg("horizon"));
  m.def("builtin_forecast_configs", [] {
    std::vector<std::string> out;
    for (const auto& config : forecast::builtin_configs()) {
      out.push_back(forecast::config_to_json(config).dump());
    }
    return out;
  });
  m.def("mase",
        [](const std::vector<double>& forecast_values,
           const std::vector<double>& actuals,
           const std::vector<std::int64_t>& train_ts,
           const std::vector<double>& train_values, int season_length) {
          return forecast::mase(forecast_values, actuals,
                                forecast::make_series(train_ts, train_values),
                                season_length);
        },
        py::arg("forecast"), py::arg("actuals"), py::arg("train_timestamps"),
        py::arg("train_values"), py::arg("season_length"));
  m.def("select_config",
        [](const std::vector<std::int64_t>& timestamps,
           const std::vector<double>& values, double validation_fraction,
           int horizon) {
          const forecast::SeriesView series =
              forecast::make_series(timestamps, values);
          const forecast::SelectResult r = forecast::select_config(
              series, forecast::builtin_configs(), validation_fraction, horizon);
          py::dict out;
          out["best"] = r.best.name;
          out["per_config_mase"] = r.per_config_mase;
          out["validation_start"] = r.validation_start;
          return out;
        },
        py::arg("timestamps"), py::arg("values"),
        py::arg("validation_fraction") = 0.1, py::arg("horizon") = 14);
}
