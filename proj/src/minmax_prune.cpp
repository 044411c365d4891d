#include "lakeprune/minmax_prune.hpp"

#include <algorithm>

#include "lakeprune/errors.hpp"

namespace lakeprune {

bool MinMaxOptions::type_enabled(ValueType type) const {
  switch (type) {
    case ValueType::Integer: return use_integer;
    case ValueType::Float: return use_float;
    case ValueType::Text: return use_text;
    case ValueType::Timestamp: return use_timestamp;
    case ValueType::Null: return false;
  }
  return false;
}

std::vector<std::string> comparable_columns(const DatasetHandle& x, const DatasetHandle& y,
                                            const MinMaxOptions& options) {
  std::vector<std::string> out;
  for (const ColumnDef& cy : y.columns) {
    const ColumnDef* cx = x.find_column(cy.path);
    if (cx == nullptr) continue;
    if (cx->type != cy.type) continue;
    if (!is_ordered_type(cy.type) || !options.type_enabled(cy.type)) continue;
    out.push_back(cy.path);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool min_max_edge_survives(const Lake& lake, const GraphEdge& edge, const MinMaxOptions& options) {
  const DatasetHandle& parent = lake.dataset(edge.parent);
  const DatasetHandle& child = lake.dataset(edge.child);

  for (const std::string& col : comparable_columns(parent, child, options)) {
    auto [cmin, cmax] = lake.dataset_min_max(child, col);
    if (!cmin) continue;  // child has no non-null values here; nothing to violate
    auto [pmin, pmax] = lake.dataset_min_max(parent, col);
    if (!pmin) return false;  // child has values the parent cannot hold
    if (compare_values(*cmin, *pmin) < 0 || compare_values(*cmax, *pmax) > 0) {
      return false;
    }
  }
  return true;
}

ContainmentGraph min_max_prune(const ContainmentGraph& graph, const Lake& lake,
                               const MinMaxOptions& options, OpCounters& counters) {
  if (graph.stage_label != Stage::Schema) {
    throw InvalidArgument("min/max pruning expects a schema-stage graph, got stage " +
                          std::string(stage_name(graph.stage_label)));
  }
  ContainmentGraph out;
  out.stage_label = Stage::MinMax;
  out.nodes = graph.nodes;
  for (const auto& [key, edge] : graph.edges) {
    ++counters.metadata_ops;
    if (min_max_edge_survives(lake, edge, options)) {
      GraphEdge kept = edge;
      kept.stage = Stage::MinMax;
      out.add_edge(std::move(kept));
    }
  }
  counters.edges_minmax += out.edge_count();
  return out;
}

}  // namespace lakeprune
