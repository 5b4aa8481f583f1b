#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "scorch/candidate.hpp"
#include "scorch/sandbox.hpp"

namespace scorch::search {

using NodeId = std::uint32_t;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct SearchNode {
  NodeId id = 0;
  std::optional<NodeId> parent_id;
  gen::Candidate candidate;
  double task_score = kNegInf;  // -inf marks a failed evaluation
  std::uint64_t visit_count = 1;
  std::uint64_t creation_index = 0;
  std::uint32_t depth = 0;
  sandbox::ExecutionRecord eval;
};

struct RankEntry {
  std::uint32_t rank = 1;        // ascending, 1..|T|
  double rank_score = 1.0;       // (rank-1)/(|T|-1), or 1 for a single node
};

using RankTable = std::vector<RankEntry>;  // indexed by node id

// The evolving population. Node ids coincide with creation indices, so the
// structure stays reproducible for a fixed seed and generator.
class SearchTree {
 public:
  SearchTree(gen::Candidate root_candidate, double root_score, double c_puct,
             std::uint64_t seed, sandbox::ExecutionRecord root_eval = {});

  NodeId expand(NodeId parent_id, gen::Candidate child, double child_score,
                sandbox::ExecutionRecord eval = {});

  const SearchNode& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<SearchNode>& nodes() const { return nodes_; }
  const std::vector<std::vector<NodeId>>& children() const { return children_; }
  std::size_t size() const { return nodes_.size(); }
  NodeId root_id() const { return 0; }
  double c_puct() const { return c_puct_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t total_visits() const { return total_visits_; }

 private:
  std::vector<SearchNode> nodes_;
  std::vector<std::vector<NodeId>> children_;
  double c_puct_;
  std::uint64_t seed_;
  std::uint64_t total_visits_ = 0;
};

SearchTree init_tree(gen::Candidate root_candidate, double root_score,
                     double c_puct, std::uint64_t seed);

// Ascending ranks over task scores; ties broken by lower creation index.
RankTable compute_rank_scores(const SearchTree& tree);

// argmax over all nodes of RankScore + c_puct * (1/|T|) * sqrt(N_total)/(1+V);
// ties broken by lower creation index.
NodeId select_node(const SearchTree& tree, const RankTable& ranks);

// Highest task score; ties broken by lower creation index.
NodeId best_solution(const SearchTree& tree);

struct BreakthroughPoint {
  std::uint64_t node_count;
  double max_score;
  bool is_breakthrough;
};

// Running maximum of the score in creation order; strict increases (and the
// first point) are flagged as breakthroughs.
std::vector<BreakthroughPoint> breakthrough_series(const SearchTree& tree);

// ---------------------------------------------------------------------------
// search loop
// ---------------------------------------------------------------------------

struct GenerationOutcome {
  gen::Candidate candidate;
  bool failed = false;          // generation failed after retries
  std::string failure_reason;
};

// parent, advice(score history filled in), per-iteration seed -> child.
using GenerateFn = std::function<GenerationOutcome(
    const SearchNode& parent, const gen::AdviceBundle& advice, std::uint64_t seed)>;

// candidate, node id -> execution record (throws only on infrastructure
// failures, which abort the run).
using ExecuteFn = std::function<sandbox::ExecutionRecord(
    const gen::Candidate& candidate, NodeId node_id)>;

struct RunHooks {
  std::function<void(const SearchTree&, NodeId)> on_node;  // after each insert
};

struct RunParams {
  std::uint64_t budget = 100;
  double c_puct = 1.0;
  std::uint64_t seed = 0;
  gen::AdviceBundle advice;
  int score_history_depth = 4;
};

// Runs exactly `budget` iterations of select -> generate -> execute ->
// expand. Candidate failures (including generation failures after the
// caller's retries) become -inf-scored nodes; infrastructure exceptions
// propagate.
SearchTree run_search(gen::Candidate root_candidate, double root_score,
                      sandbox::ExecutionRecord root_eval,
                      const GenerateFn& generate, const ExecuteFn& execute,
                      const RunParams& params, const RunHooks& hooks = {});

}  // namespace scorch::search
