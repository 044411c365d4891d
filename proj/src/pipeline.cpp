#include "lakeprune/pipeline.hpp"

#include "lakeprune/errors.hpp"

namespace lakeprune {

PipelineResult run_pipeline(Lake& lake, const PipelineParams& params) {
  const uint64_t scanned_before = lake.rows_scanned();
  PipelineResult result;

  std::vector<SchemaSet> schemas;
  for (const std::string& name : lake.dataset_names()) {
    schemas.push_back(flatten_schema(lake.dataset(name)));
  }
  SchemaGraphResult sgb = build_schema_graph(std::move(schemas), result.counters);
  result.schema_graph = std::move(sgb.graph);
  result.clusters = std::move(sgb.clusters);

  if (params.stop_after != Stage::Schema) {
    result.minmax_graph =
        min_max_prune(result.schema_graph, lake, params.minmax, result.counters);
    if (params.stop_after != Stage::MinMax) {
      result.content_graph =
          content_prune(*result.minmax_graph, lake, params.clp, result.counters, params.threads);
    }
  }

  result.counters.rows_scanned += lake.rows_scanned() - scanned_before;
  return result;
}

std::optional<GraphEdge> evaluate_candidate_pair(Lake& lake, const SchemaSet& parent,
                                                 const SchemaSet& child,
                                                 const PipelineParams& params,
                                                 OpCounters& counters) {
  if (params.stop_after == Stage::Truth) {
    throw InvalidArgument("candidate evaluation stops at a pipeline stage, not TRUTH");
  }
  ++counters.schema_pair_ops;
  if (!schema_contained(child, parent)) return std::nullopt;

  GraphEdge edge;
  edge.parent = parent.owner;
  edge.child = child.owner;
  edge.stage = Stage::Schema;
  edge.common_columns = child.tokens;
  if (params.stop_after == Stage::Schema) return edge;

  ++counters.metadata_ops;
  if (!min_max_edge_survives(lake, edge, params.minmax)) return std::nullopt;
  edge.stage = Stage::MinMax;
  if (params.stop_after == Stage::MinMax) return edge;

  const uint64_t before = lake.rows_scanned();
  const bool kept = content_edge_survives(lake, edge, params.clp, counters);
  counters.rows_scanned += lake.rows_scanned() - before;
  if (!kept) return std::nullopt;
  edge.stage = Stage::Content;
  return edge;
}

}  // namespace lakeprune
