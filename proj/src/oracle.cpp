#include "lakeprune/oracle.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "lakeprune/errors.hpp"
#include "lakeprune/schema_graph.hpp"

using nlohmann::ordered_json;

namespace lakeprune {

ContainmentGraph ground_truth_schema(const Lake& lake, OpCounters& counters) {
  std::vector<SchemaSet> schemas;
  for (const std::string& name : lake.dataset_names()) {
    schemas.push_back(flatten_schema(lake.dataset(name)));
  }

  ContainmentGraph g;
  g.stage_label = Stage::Truth;
  for (const SchemaSet& s : schemas) g.nodes.insert(s.owner);

  for (size_t i = 0; i < schemas.size(); ++i) {
    for (size_t j = i + 1; j < schemas.size(); ++j) {
      ++counters.schema_pair_ops;
      const bool i_in_j = schema_contained(schemas[i], schemas[j]);
      const bool j_in_i = schema_contained(schemas[j], schemas[i]);
      if (j_in_i) {
        GraphEdge e{schemas[i].owner, schemas[j].owner, Stage::Truth, schemas[j].tokens};
        g.add_edge(std::move(e));
      }
      if (i_in_j) {
        GraphEdge e{schemas[j].owner, schemas[i].owner, Stage::Truth, schemas[i].tokens};
        g.add_edge(std::move(e));
      }
    }
  }
  return g;
}

double containment_fraction(const Lake& lake, const DatasetHandle& parent,
                            const DatasetHandle& child, OpCounters* counters) {
  const std::vector<std::string> child_cols = child.column_paths();
  for (const std::string& col : child_cols) {
    if (parent.find_column(col) == nullptr) {
      throw SchemaError("containment fraction requires the child's columns in the parent; " +
                        parent.name + " lacks " + col);
    }
  }
  if (counters != nullptr) {
    counters->nominal_row_ops += parent.total_rows * child.total_rows;
  }

  std::unordered_set<std::string> child_distinct;
  for (const Row& row : lake.scan(child, child_cols)) {
    child_distinct.insert(encode_row(row));
  }
  if (child_distinct.empty()) return 1.0;

  std::unordered_set<std::string> parent_rows;
  for (const Row& row : lake.scan(parent, child_cols)) {
    parent_rows.insert(encode_row(row));
  }

  uint64_t hits = 0;
  for (const std::string& key : child_distinct) {
    if (counters != nullptr) ++counters->row_membership_ops;
    if (parent_rows.count(key) > 0) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(child_distinct.size());
}

std::vector<ContainmentReport> ground_truth_content(const Lake& lake,
                                                    const ContainmentGraph& schema_truth,
                                                    OpCounters& counters) {
  const uint64_t before = lake.rows_scanned();
  std::vector<ContainmentReport> reports;
  reports.reserve(schema_truth.edges.size());
  for (const auto& [key, edge] : schema_truth.edges) {
    const DatasetHandle& parent = lake.dataset(edge.parent);
    const DatasetHandle& child = lake.dataset(edge.child);
    reports.push_back({edge.parent, edge.child, containment_fraction(lake, parent, child, &counters)});
  }
  counters.rows_scanned += lake.rows_scanned() - before;
  return reports;
}

EvalSummary evaluate(const ContainmentGraph& stage_graph,
                     const std::vector<ContainmentReport>& truth) {
  std::map<ContainmentGraph::EdgeKey, double> cm;
  for (const ContainmentReport& r : truth) {
    if (!stage_graph.nodes.count(r.parent) || !stage_graph.nodes.count(r.child)) {
      throw InvalidArgument("truth report references a node outside the graph: " + r.parent +
                            " -> " + r.child);
    }
    cm[{r.parent, r.child}] = r.cm;
  }

  EvalSummary out;
  for (const auto& [key, edge] : stage_graph.edges) {
    auto it = cm.find(key);
    if (it != cm.end() && it->second == 1.0) {
      ++out.correct;
    } else {
      ++out.incorrect_lt1;
    }
  }
  for (const auto& [key, value] : cm) {
    if (value == 1.0 && stage_graph.edges.count(key) == 0) ++out.not_detected;
  }
  return out;
}

void save_truth_jsonl(const std::filesystem::path& path,
                      const std::vector<ContainmentReport>& reports) {
  std::vector<const ContainmentReport*> sorted;
  sorted.reserve(reports.size());
  for (const ContainmentReport& r : reports) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const ContainmentReport* a, const ContainmentReport* b) {
    return std::tie(a->parent, a->child) < std::tie(b->parent, b->child);
  });

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write truth file: " + path.string());
  for (const ContainmentReport* r : sorted) {
    ordered_json j;
    j["parent"] = r->parent;
    j["child"] = r->child;
    j["cm"] = r->cm;
    out << j.dump() << "\n";
  }
}

std::vector<ContainmentReport> load_truth_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open truth file: " + path.string());
  std::vector<ContainmentReport> reports;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      ordered_json j = ordered_json::parse(line);
      reports.push_back({j.at("parent").get<std::string>(), j.at("child").get<std::string>(),
                         j.at("cm").get<double>()});
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return reports;
}

}  // namespace lakeprune
