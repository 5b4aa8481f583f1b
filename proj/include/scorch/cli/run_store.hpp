#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "scorch/search.hpp"

namespace scorch::cli {

inline constexpr int kTreeSchemaVersion = 1;

// Deterministic byte serializations: same tree -> same bytes.
std::string tree_export_json(const search::SearchTree& tree,
                             const std::string& run_id,
                             const std::string& task_id);
std::string breakthroughs_csv(const search::SearchTree& tree);

// Structural check of a tree export document.
bool validate_tree_export(const nlohmann::json& doc, std::string* error);

// Layout: <output_root>/runs/<run_id>/{manifest.json,tree.json,
// breakthroughs.csv,nodes/<node_id>/}.
class RunStore {
 public:
  RunStore(std::filesystem::path output_root, std::string run_id);

  // Fails if the run directory already exists (run ids are unique per root).
  void create();

  std::filesystem::path run_dir() const;
  std::filesystem::path node_scratch(search::NodeId id) const;

  void write_manifest(const nlohmann::json& manifest) const;
  void write_tree(const std::string& bytes) const;
  void write_breakthroughs(const std::string& bytes) const;

  static std::string read_file(const std::filesystem::path& path);

 private:
  std::filesystem::path output_root_;
  std::string run_id_;
};

std::string default_output_root();  // $SCORCH_OUTPUT_ROOT or "."

}  // namespace scorch::cli
