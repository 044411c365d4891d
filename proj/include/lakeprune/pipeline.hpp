#pragma once

#include <optional>

#include "lakeprune/content_prune.hpp"
#include "lakeprune/counters.hpp"
#include "lakeprune/graph.hpp"
#include "lakeprune/lake.hpp"
#include "lakeprune/minmax_prune.hpp"
#include "lakeprune/schema_graph.hpp"

namespace lakeprune {

struct PipelineParams {
  ClpParams clp;
  MinMaxOptions minmax;
  Stage stop_after = Stage::Content;  // Schema, MinMax, or Content
  int threads = 1;
};

struct PipelineResult {
  ContainmentGraph schema_graph;
  std::optional<ContainmentGraph> minmax_graph;
  std::optional<ContainmentGraph> content_graph;
  std::vector<SchemaCluster> clusters;
  OpCounters counters;

  const ContainmentGraph& final_graph() const {
    if (content_graph) return *content_graph;
    if (minmax_graph) return *minmax_graph;
    return schema_graph;
  }
};

// Runs the staged pruning over every dataset in the lake. Counts rows read
// by the stages themselves (not by ingestion) in counters.rows_scanned.
PipelineResult run_pipeline(Lake& lake, const PipelineParams& params);

// Evaluates one candidate ordered pair through the same per-edge checks the
// batch stages use, stopping at params.stop_after. Returns the surviving
// edge labeled with the final stage, or nothing. Incremental maintenance
// reuses this so its decisions match a batch rerun bit for bit.
std::optional<GraphEdge> evaluate_candidate_pair(Lake& lake, const SchemaSet& parent,
                                                 const SchemaSet& child,
                                                 const PipelineParams& params,
                                                 OpCounters& counters);

}  // namespace lakeprune
