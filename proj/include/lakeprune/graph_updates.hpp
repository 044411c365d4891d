#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lakeprune/pipeline.hpp"

namespace lakeprune {

enum class MutationKind { RowsAdded, ColumnsAdded, RowsRemoved, ColumnsRemoved };

std::string_view mutation_kind_name(MutationKind kind);
MutationKind mutation_kind_from_name(std::string_view name);

// Graph plus the cluster bookkeeping needed to keep future updates linear.
// Any structural change leaves a previously computed retention plan stale.
struct PipelineState {
  ContainmentGraph graph;
  std::vector<SchemaCluster> clusters;
  bool retention_plan_stale = false;
};

struct UpdateReport {
  uint64_t pairs_examined = 0;
  OpCounters counters;
};

// Incorporates an already-ingested dataset. Candidates are limited to
// co-members of the clusters the new schema lands in, which covers every
// possible containment partner; each candidate pair then runs through the
// same per-edge checks as a batch rerun, so the resulting edge set is
// identical to recomputing the pipeline from scratch.
UpdateReport add_dataset(PipelineState& state, Lake& lake, const std::string& name,
                         const PipelineParams& params);

// Re-evaluates the neighborhood of a dataset whose content was replaced.
// For additive changes the existing outgoing edges are provably still valid
// and are kept unchecked; everything else involving the node is recomputed.
UpdateReport mutate_dataset(PipelineState& state, Lake& lake, const std::string& name,
                            MutationKind kind, const PipelineParams& params);

// Drops the node and its incident edges. If the node centered a cluster, the
// orphaned members are re-clustered locally.
UpdateReport remove_dataset(PipelineState& state, const std::string& name);

}  // namespace lakeprune
