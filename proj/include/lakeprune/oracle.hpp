#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lakeprune/counters.hpp"
#include "lakeprune/graph.hpp"
#include "lakeprune/lake.hpp"

namespace lakeprune {

// Exact containment fraction for one ordered pair: the share of the child's
// distinct rows (projected onto the child's full column set) that also occur
// in the parent under the same projection. An empty child is fully contained.
struct ContainmentReport {
  std::string parent;
  std::string child;
  double cm = 0.0;
};

struct EvalSummary {
  uint64_t correct = 0;        // edges present with cm = 1
  uint64_t incorrect_lt1 = 0;  // edges present with cm < 1
  uint64_t not_detected = 0;   // cm = 1 pairs missing from the graph
};

// All ordered pairs with contained schemas, by exhaustive pairwise testing.
ContainmentGraph ground_truth_schema(const Lake& lake, OpCounters& counters);

// Exact cm for every edge of a schema-level truth graph. Counts the naive
// row-by-row comparison work alongside the rows actually read.
std::vector<ContainmentReport> ground_truth_content(const Lake& lake,
                                                    const ContainmentGraph& schema_truth,
                                                    OpCounters& counters);

double containment_fraction(const Lake& lake, const DatasetHandle& parent,
                            const DatasetHandle& child, OpCounters* counters = nullptr);

// Scores one stage graph against the truth reports. Every report endpoint
// must be a node of the graph.
EvalSummary evaluate(const ContainmentGraph& stage_graph,
                     const std::vector<ContainmentReport>& truth);

void save_truth_jsonl(const std::filesystem::path& path,
                      const std::vector<ContainmentReport>& reports);
std::vector<ContainmentReport> load_truth_jsonl(const std::filesystem::path& path);

}  // namespace lakeprune
