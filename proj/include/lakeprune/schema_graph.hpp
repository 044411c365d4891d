#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lakeprune/counters.hpp"
#include "lakeprune/graph.hpp"
#include "lakeprune/lake.hpp"

namespace lakeprune {

// A dataset's flattened column paths, sorted and unique.
struct SchemaSet {
  std::string owner;
  std::vector<std::string> tokens;

  size_t size() const { return tokens.size(); }
};

// True when every token of `a` appears in `b`.
bool schema_contained(const SchemaSet& a, const SchemaSet& b);

// Throws SchemaError when the dataset has no columns or duplicate paths.
SchemaSet flatten_schema(const DatasetHandle& handle);

// Every cluster member's token set is contained in the center's token set;
// the center is itself a member. One schema may belong to many clusters.
struct SchemaCluster {
  SchemaSet center;
  std::vector<SchemaSet> members;
};

struct SchemaGraphResult {
  ContainmentGraph graph;
  std::vector<SchemaCluster> clusters;
};

// Groups schemas around the largest ones and emits every directed edge
// x -> y with y's schema contained in x's. Clustering bounds the number of
// pairwise checks; the emitted edge set is exactly the set of contained
// ordered pairs, independent of tie order in the size sort.
SchemaGraphResult build_schema_graph(std::vector<SchemaSet> schemas, OpCounters& counters);

// Cluster state is persisted as owner names only; token sets are rebuilt
// from the lake on load.
void save_clusters(const std::filesystem::path& path, const std::vector<SchemaCluster>& clusters);
std::vector<SchemaCluster> load_clusters(const std::filesystem::path& path, const Lake& lake);

}  // namespace lakeprune
