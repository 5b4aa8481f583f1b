#include "scorch/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "scorch/rng.hpp"

namespace scorch::search {

SearchTree::SearchTree(gen::Candidate root_candidate, double root_score,
                       double c_puct, std::uint64_t seed,
                       sandbox::ExecutionRecord root_eval)
    : c_puct_(c_puct), seed_(seed) {
  if (!(c_puct > 0.0)) {
    throw std::invalid_argument("c_puct must be positive");
  }
  SearchNode root;
  root.id = 0;
  root.candidate = std::move(root_candidate);
  root.task_score = std::isnan(root_score) ? kNegInf : root_score;
  root.visit_count = 1;
  root.creation_index = 0;
  root.depth = 0;
  root.eval = std::move(root_eval);
  nodes_.push_back(std::move(root));
  children_.emplace_back();
  total_visits_ = 1;
}

NodeId SearchTree::expand(NodeId parent_id, gen::Candidate child,
                          double child_score, sandbox::ExecutionRecord eval) {
  if (parent_id >= nodes_.size()) {
    throw std::out_of_range("expand: unknown parent id");
  }
  SearchNode node;
  node.id = static_cast<NodeId>(nodes_.size());
  node.parent_id = parent_id;
  node.candidate = std::move(child);
  node.task_score = std::isnan(child_score) ? kNegInf : child_score;
  node.visit_count = 1;
  node.creation_index = node.id;
  node.depth = nodes_[parent_id].depth + 1;
  node.eval = std::move(eval);

  nodes_.push_back(std::move(node));
  children_.emplace_back();
  children_[parent_id].push_back(nodes_.back().id);
  total_visits_ += 1;

  // Backpropagate: every strict ancestor gains one visit.
  std::optional<NodeId> cur = parent_id;
  while (cur) {
    nodes_[*cur].visit_count += 1;
    total_visits_ += 1;
    cur = nodes_[*cur].parent_id;
  }
  return nodes_.back().id;
}

SearchTree init_tree(gen::Candidate root_candidate, double root_score,
                     double c_puct, std::uint64_t seed) {
  return SearchTree(std::move(root_candidate), root_score, c_puct, seed);
}

RankTable compute_rank_scores(const SearchTree& tree) {
  const auto& nodes = tree.nodes();
  std::vector<NodeId> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    if (nodes[a].task_score != nodes[b].task_score) {
      return nodes[a].task_score < nodes[b].task_score;
    }
    return nodes[a].creation_index < nodes[b].creation_index;
  });
  RankTable table(nodes.size());
  const std::size_t n = nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    table[order[i]].rank = static_cast<std::uint32_t>(i + 1);
    table[order[i]].rank_score =
        n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 1.0;
  }
  return table;
}

NodeId select_node(const SearchTree& tree, const RankTable& ranks) {
  if (ranks.size() != tree.size()) {
    throw std::invalid_argument("select_node: stale rank table");
  }
  const double n_total = static_cast<double>(tree.total_visits());
  const double prior = 1.0 / static_cast<double>(tree.size());
  const double sqrt_total = std::sqrt(n_total);

  NodeId best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (const auto& node : tree.nodes()) {
    const double exploration =
        tree.c_puct() * prior * sqrt_total /
        (1.0 + static_cast<double>(node.visit_count));
    const double value = ranks[node.id].rank_score + exploration;
    if (value > best_value) {
      best_value = value;
      best = node.id;
    }
  }
  return best;
}

NodeId best_solution(const SearchTree& tree) {
  NodeId best = 0;
  for (const auto& node : tree.nodes()) {
    if (node.task_score > tree.node(best).task_score) {
      best = node.id;
    }
  }
  return best;
}

std::vector<BreakthroughPoint> breakthrough_series(const SearchTree& tree) {
  std::vector<BreakthroughPoint> series;
  series.reserve(tree.size());
  double running = kNegInf;
  for (const auto& node : tree.nodes()) {  // stored in creation order
    const bool breakthrough = series.empty() || node.task_score > running;
    running = std::max(running, node.task_score);
    series.push_back({series.size() + 1, running, breakthrough});
  }
  return series;
}

SearchTree run_search(gen::Candidate root_candidate, double root_score,
                      sandbox::ExecutionRecord root_eval,
                      const GenerateFn& generate, const ExecuteFn& execute,
                      const RunParams& params, const RunHooks& hooks) {
  if (params.budget < 1) {
    throw std::invalid_argument("run_search: budget must be >= 1");
  }
  SearchTree tree(std::move(root_candidate), root_score, params.c_puct,
                  params.seed, std::move(root_eval));
  if (hooks.on_node) hooks.on_node(tree, tree.root_id());

  for (std::uint64_t iter = 0; iter < params.budget; ++iter) {
    const RankTable ranks = compute_rank_scores(tree);
    const NodeId parent_id = select_node(tree, ranks);
    const SearchNode& parent = tree.node(parent_id);

    gen::AdviceBundle advice = params.advice;
    // Walk the ancestor chain for recent score context, nearest first.
    std::optional<NodeId> cur = parent_id;
    for (int i = 0; i < params.score_history_depth && cur; ++i) {
      const SearchNode& a = tree.node(*cur);
      advice.score_history.emplace_back(
          a.task_score, "candidate " + a.candidate.digest());
      cur = a.parent_id;
    }

    const std::uint64_t iter_seed = mix_seed(params.seed, iter);
    GenerationOutcome outcome = generate(parent, advice, iter_seed);

    NodeId child_id;
    if (outcome.failed) {
      sandbox::ExecutionRecord rec;
      rec.status = sandbox::Status::crashed;
      rec.stderr_excerpt = "generation failed: " + outcome.failure_reason;
      gen::Candidate placeholder = parent.candidate;
      placeholder.parent_digest = parent.candidate.digest();
      child_id = tree.expand(parent_id, std::move(placeholder), kNegInf, rec);
    } else {
      sandbox::ExecutionRecord rec = execute(outcome.candidate,
                                             static_cast<NodeId>(tree.size()));
      const double score =
          rec.status == sandbox::Status::ok ? rec.score : kNegInf;
      child_id = tree.expand(parent_id, std::move(outcome.candidate), score, rec);
    }
    if (hooks.on_node) hooks.on_node(tree, child_id);
  }
  return tree;
}

}  // namespace scorch::search
