#pragma once

#include <string>
#include <vector>

#include "lakeprune/counters.hpp"
#include "lakeprune/graph.hpp"
#include "lakeprune/lake.hpp"

namespace lakeprune {

// Which value types participate in min/max range checks. All four concrete
// types order totally, so all default to on; text or timestamp ranges can be
// excluded when their orderings are not trusted for a given lake.
struct MinMaxOptions {
  bool use_integer = true;
  bool use_float = true;
  bool use_text = true;
  bool use_timestamp = true;

  bool type_enabled(ValueType type) const;
};

// Shared columns carrying the same enabled, ordered type on both sides.
std::vector<std::string> comparable_columns(const DatasetHandle& x, const DatasetHandle& y,
                                            const MinMaxOptions& options = {});

// Necessary-condition check for edge x -> y: every comparable shared column
// of the child must have its [min, max] inside the parent's. Reads only
// partition statistics, never rows.
bool min_max_edge_survives(const Lake& lake, const GraphEdge& edge, const MinMaxOptions& options);

// Applies the check to every edge of a schema-stage graph. Survivors are
// relabeled to the MMP stage; nodes are never dropped.
ContainmentGraph min_max_prune(const ContainmentGraph& graph, const Lake& lake,
                               const MinMaxOptions& options, OpCounters& counters);

}  // namespace lakeprune
