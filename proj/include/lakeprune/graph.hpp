#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lakeprune {

// Pipeline stage that last confirmed an edge. Wire names: SGB (schema
// grouping), MMP (min/max pruning), CLP (content-level pruning), TRUTH
// (oracle output).
enum class Stage : uint8_t { Schema, MinMax, Content, Truth };

std::string_view stage_name(Stage stage);
Stage stage_from_name(std::string_view name);

// An edge parent -> child asserts that child's rows may be contained in
// parent when projected onto the shared columns.
struct GraphEdge {
  std::string parent;
  std::string child;
  Stage stage = Stage::Schema;
  std::vector<std::string> common_columns;  // sorted
};

class ContainmentGraph {
 public:
  using EdgeKey = std::pair<std::string, std::string>;  // (parent, child)

  Stage stage_label = Stage::Schema;
  std::set<std::string> nodes;
  std::map<EdgeKey, GraphEdge> edges;  // deterministic iteration order

  bool has_edge(const std::string& parent, const std::string& child) const {
    return edges.count({parent, child}) > 0;
  }
  void add_edge(GraphEdge edge);
  void remove_edge(const std::string& parent, const std::string& child);

  uint64_t edge_count() const { return edges.size(); }

  std::string serialize() const;  // exact bytes written to disk
  static ContainmentGraph deserialize(const std::string& text, const std::string& origin);
};

void save_graph(const std::filesystem::path& path, const ContainmentGraph& graph);
ContainmentGraph load_graph(const std::filesystem::path& path);

}  // namespace lakeprune
