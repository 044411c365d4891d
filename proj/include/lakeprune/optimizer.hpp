#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lakeprune/graph.hpp"

namespace lakeprune {

// Weekly scheduling granularity for access-driven cost terms.
inline constexpr double kWeeksPerPeriod = 4.33;

struct CostModel {
  double storage_per_byte = 1.0;
  double maintenance_per_byte = 0.5;
  double read_per_byte = 0.1;
  double write_per_byte = 0.2;
  double read_latency_per_byte = 1.0;
  double write_latency_per_byte = 2.0;
  // Edges whose reconstruction latency reaches this are unusable.
  double latency_threshold = std::numeric_limits<double>::infinity();
};

// key = value lines, '#' comments. Missing keys keep their defaults.
CostModel load_cost_model(const std::filesystem::path& file);

struct NodeEconomics {
  std::string node;
  double size_bytes = 0.0;
  double maintenance_freq = 0.0;  // maintenance runs per period
  double access_freq = 0.0;       // accesses per week
  uint64_t rows = 0;
};

using EconMap = std::map<std::string, NodeEconomics>;

EconMap load_economics(const std::filesystem::path& file);
void save_economics(const EconMap& econ, const std::filesystem::path& file);

struct TransformLabel {
  std::string parent;
  std::string child;
  std::string transform;
};

std::vector<TransformLabel> load_transforms(const std::filesystem::path& file);
void save_transforms(const std::vector<TransformLabel>& labels,
                     const std::filesystem::path& file);

// Deleting `child` means rebuilding it from `parent` at recon_cost per access.
struct AnnotatedEdge {
  std::string parent;
  std::string child;
  std::string transform;
  double recon_cost = 0.0;
  double recon_latency = 0.0;
};

struct AnnotateResult {
  std::vector<AnnotatedEdge> edges;
  uint64_t dropped_unlabeled = 0;
  uint64_t dropped_latency = 0;
};

// Keeps only edges with a known transform whose reconstruction latency stays
// under the threshold. Every graph node must have an economics entry.
AnnotateResult annotate_edges(const ContainmentGraph& graph,
                              const std::vector<TransformLabel>& labels,
                              const EconMap& econ, const CostModel& cost);

// Per-period cost of keeping a dataset materialized.
double retention_cost(const NodeEconomics& econ, const CostModel& cost);

struct RetentionPlan {
  double objective = 0.0;
  std::set<std::string> retained;
  std::set<std::string> deleted;
  // child -> (retained parent it is rebuilt from, per-access cost)
  std::map<std::string, std::pair<std::string, double>> reconstruct;
};

void save_plan(const RetentionPlan& plan, const std::filesystem::path& file);
RetentionPlan load_plan(const std::filesystem::path& file);

// Recomputes the objective from scratch and checks every deletion is backed
// by a retained parent. Throws StructureError on any mismatch.
void validate_plan(const RetentionPlan& plan, const std::vector<std::string>& nodes,
                   const EconMap& econ, const std::vector<AnnotatedEdge>& edges,
                   const CostModel& cost);

struct SolveStats {
  uint64_t bnb_nodes_explored = 0;
  uint64_t dyn_ops = 0;
  uint64_t line_components = 0;
};

// Exact branch-and-bound minimizing total retention plus reconstruction cost.
// A node may be deleted only if some parent of it is retained. Ties prefer
// retention; reconstruction parent ties pick the lexicographically smallest.
RetentionPlan solve_opt_ret(const std::vector<std::string>& nodes, const EconMap& econ,
                            const std::vector<AnnotatedEdge>& edges, const CostModel& cost,
                            SolveStats* stats = nullptr);

struct LineDecomposition {
  std::vector<std::vector<std::string>> lines;  // each in path order
  std::vector<std::string> residual_nodes;
  std::vector<AnnotatedEdge> residual_edges;
};

// Splits off weakly connected components that form simple directed paths.
// Everything else stays in the residual, so solving parts independently and
// merging loses nothing.
LineDecomposition detect_line_graphs(const std::vector<std::string>& nodes,
                                     const std::vector<AnnotatedEdge>& edges);

// Linear-time exact solve for a path v0 -> v1 -> ... -> vk. On a path no two
// adjacent nodes can both be deleted, which the recurrence exploits.
RetentionPlan solve_dyn_lin(const std::vector<std::string>& path_nodes, const EconMap& econ,
                            const std::vector<AnnotatedEdge>& edges, const CostModel& cost,
                            uint64_t* ops = nullptr);

// Full solve: line components go through the linear solver, the rest through
// branch-and-bound per component. force_exhaustive sends everything to
// branch-and-bound.
RetentionPlan optimize_retention(const std::vector<std::string>& nodes, const EconMap& econ,
                                 const std::vector<AnnotatedEdge>& edges, const CostModel& cost,
                                 bool force_exhaustive = false, SolveStats* stats = nullptr);

struct SavingsReport {
  double horizon_periods = 0.0;
  double storage_saved = 0.0;
  double maintenance_saved = 0.0;
  double reconstruction_cost = 0.0;
  double net_savings = 0.0;
  long long row_scan_savings = 0;
  uint64_t deleted_count = 0;
};

// Projects a plan over a horizon. Weekly accesses per deleted dataset come
// from accesses_per_week when given, otherwise from each node's economics.
SavingsReport savings_report(const RetentionPlan& plan, const EconMap& econ,
                             const CostModel& cost, double horizon_periods,
                             std::optional<double> accesses_per_week);

void save_savings(const SavingsReport& report, const std::filesystem::path& file);

struct BenchRecord {
  int nodes = 0;
  int edges = 0;
  double objective = 0.0;
  uint64_t bnb_nodes_explored = 0;
  uint64_t dyn_ops = 0;
  uint64_t line_components = 0;
  double wall_ms = 0.0;  // excluded from deterministic output
};

// Random directed graph with power-law access and maintenance frequencies.
// Same (n, edge_prob, seed, alpha) always yields the same record apart from
// wall_ms.
BenchRecord random_graph_harness(int n, double edge_prob, uint64_t seed, double alpha = 2.0);

}  // namespace lakeprune
