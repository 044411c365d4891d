#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lakeprune/counters.hpp"
#include "lakeprune/graph.hpp"
#include "lakeprune/lake.hpp"
#include "lakeprune/minmax_prune.hpp"
#include "lakeprune/rng.hpp"

namespace lakeprune {

// ChildOnly probes sampled child rows against the parent; BothSides also
// restricts the parent's membership set to rows matching the same filters,
// which is sound because a filter commutes with containment.
enum class ClpMode { ChildOnly, BothSides };

// Filtered sampling drives the sample through equality filters built from
// partition metadata, scanning only qualifying partitions. Uniform sampling
// reservoir-samples a full scan; it is also the fallback when no usable
// filter value exists.
enum class ClpSampling { Filtered, Uniform };

struct ClpParams {
  uint32_t max_filter_columns = 4;  // search columns per edge (s)
  uint32_t max_sample_rows = 10;    // sampled child rows per edge (t)
  uint64_t seed = 0;
  ClpMode mode = ClpMode::ChildOnly;
  ClpSampling sampling = ClpSampling::Filtered;
};

// Smallest sample size n such that missing every differing row has
// probability at most delta when at least an epsilon fraction of the child
// lies outside the parent: n = ceil(ln(1/delta) / ln(1/(1-epsilon))).
uint64_t required_samples(double epsilon, double delta);

// Columns to filter on, preferring the largest metadata value pools.
std::vector<std::string> choose_search_columns(const DatasetHandle& child,
                                               const std::vector<std::string>& common_cols,
                                               uint32_t max_columns);

// Up to `t` child rows projected onto `project_cols`. With nonempty
// search_cols, rows are drawn from equality-filter matches and only
// qualifying partitions are read; otherwise a uniform reservoir over a full
// scan is used. Deterministic given the rng stream.
std::vector<Row> sample_child(const Lake& lake, const DatasetHandle& child,
                              const std::vector<std::string>& project_cols,
                              const std::vector<std::string>& search_cols, uint32_t t, Rng& rng);

// One-edge check: samples the child and verifies every sampled row exists in
// the parent. A missing row disproves containment, so the edge is removed;
// an empty sample keeps it.
bool content_edge_survives(const Lake& lake, const GraphEdge& edge, const ClpParams& params,
                           OpCounters& counters);

// Applies the check to every edge of a min/max-stage graph. Per-edge
// sampling streams are derived from (seed, parent, child), so results do not
// depend on edge order or thread count.
ContainmentGraph content_prune(const ContainmentGraph& graph, Lake& lake, const ClpParams& params,
                               OpCounters& counters, int threads = 1);

}  // namespace lakeprune
