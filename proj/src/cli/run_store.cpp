#include "scorch/cli/run_store.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace scorch::cli {

using nlohmann::json;

namespace {

// Shortest round-trip decimal form, deterministic across runs.
std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

json score_to_json(double score) {
  if (std::isfinite(score)) return score;
  return "-inf";  // failed evaluations; JSON numbers cannot carry infinities
}

}  // namespace

std::string tree_export_json(const search::SearchTree& tree,
                             const std::string& run_id,
                             const std::string& task_id) {
  json doc;
  doc["schema_version"] = kTreeSchemaVersion;
  doc["run_id"] = run_id;
  doc["task_id"] = task_id;
  doc["c_puct"] = tree.c_puct();
  doc["seed"] = tree.seed();
  json nodes = json::array();
  for (const auto& node : tree.nodes()) {
    json n;
    n["id"] = node.id;
    if (node.parent_id) {
      n["parent_id"] = *node.parent_id;
    } else {
      n["parent_id"] = nullptr;
    }
    n["creation_index"] = node.creation_index;
    n["task_score"] = score_to_json(node.task_score);
    n["visit_count"] = node.visit_count;
    n["candidate_digest"] = node.candidate.digest();
    n["wall_time_ms"] = node.eval.wall_time_ms;
    nodes.push_back(std::move(n));
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(1) + "\n";
}

std::string breakthroughs_csv(const search::SearchTree& tree) {
  std::string out = "node_count,max_score,is_breakthrough\n";
  for (const auto& point : search::breakthrough_series(tree)) {
    out += std::to_string(point.node_count);
    out += ',';
    out += std::isfinite(point.max_score) ? format_double(point.max_score)
                                          : std::string("-inf");
    out += ',';
    out += point.is_breakthrough ? '1' : '0';
    out += '\n';
  }
  return out;
}

bool validate_tree_export(const json& doc, std::string* error) {
  auto fail = [error](const std::string& message) {
    if (error) *error = message;
    return false;
  };
  if (!doc.is_object()) return fail("document is not an object");
  for (const char* key : {"schema_version", "run_id", "task_id", "c_puct",
                          "seed", "nodes"}) {
    if (!doc.contains(key)) return fail(std::string("missing field: ") + key);
  }
  if (doc["schema_version"].get<int>() != kTreeSchemaVersion) {
    return fail("unsupported schema_version");
  }
  if (!doc["nodes"].is_array() || doc["nodes"].empty()) {
    return fail("nodes must be a nonempty array");
  }
  std::size_t index = 0;
  for (const auto& n : doc["nodes"]) {
    for (const char* key : {"id", "parent_id", "creation_index", "task_score",
                            "visit_count", "candidate_digest", "wall_time_ms"}) {
      if (!n.contains(key)) {
        return fail("node " + std::to_string(index) + " missing field " + key);
      }
    }
    const bool score_ok = n["task_score"].is_number() ||
                          (n["task_score"].is_string() &&
                           n["task_score"].get<std::string>() == "-inf");
    if (!score_ok) {
      return fail("node " + std::to_string(index) + " has a malformed score");
    }
    ++index;
  }
  return true;
}

RunStore::RunStore(std::filesystem::path output_root, std::string run_id)
    : output_root_(std::move(output_root)), run_id_(std::move(run_id)) {}

std::filesystem::path RunStore::run_dir() const {
  return output_root_ / "runs" / run_id_;
}

std::filesystem::path RunStore::node_scratch(search::NodeId id) const {
  return run_dir() / "nodes" / std::to_string(id);
}

void RunStore::create() {
  namespace fs = std::filesystem;
  const fs::path dir = run_dir();
  if (fs::exists(dir)) {
    throw std::runtime_error("run directory already exists: " + dir.string());
  }
  fs::create_directories(dir / "nodes");
}

void RunStore::write_manifest(const json& manifest) const {
  std::ofstream out(run_dir() / "manifest.json", std::ios::binary);
  out << manifest.dump(1) << "\n";
}

void RunStore::write_tree(const std::string& bytes) const {
  std::ofstream out(run_dir() / "tree.json", std::ios::binary);
  out << bytes;
}

void RunStore::write_breakthroughs(const std::string& bytes) const {
  std::ofstream out(run_dir() / "breakthroughs.csv", std::ios::binary);
  out << bytes;
}

std::string RunStore::read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string default_output_root() {
  if (const char* env = std::getenv("SCORCH_OUTPUT_ROOT"); env && *env) {
    return env;
  }
  return ".";
}

}  // namespace scorch::cli
