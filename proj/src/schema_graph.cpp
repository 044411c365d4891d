#include "lakeprune/schema_graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "lakeprune/errors.hpp"

using nlohmann::ordered_json;

namespace lakeprune {

bool schema_contained(const SchemaSet& a, const SchemaSet& b) {
  if (a.size() > b.size()) return false;
  return std::includes(b.tokens.begin(), b.tokens.end(), a.tokens.begin(), a.tokens.end());
}

SchemaSet flatten_schema(const DatasetHandle& handle) {
  if (handle.columns.empty()) {
    throw SchemaError("dataset " + handle.name + " has no columns");
  }
  SchemaSet s;
  s.owner = handle.name;
  s.tokens = handle.column_paths();
  std::sort(s.tokens.begin(), s.tokens.end());
  for (size_t i = 1; i < s.tokens.size(); ++i) {
    if (s.tokens[i] == s.tokens[i - 1]) {
      throw SchemaError("dataset " + handle.name + " has duplicate flattened path " + s.tokens[i]);
    }
  }
  return s;
}

namespace {

void normalize_schema(SchemaSet& s) {
  if (s.owner.empty()) throw SchemaError("schema owner must be nonempty");
  if (s.tokens.empty()) throw SchemaError("schema of " + s.owner + " has no tokens");
  std::sort(s.tokens.begin(), s.tokens.end());
  for (size_t i = 1; i < s.tokens.size(); ++i) {
    if (s.tokens[i] == s.tokens[i - 1]) {
      throw SchemaError("schema of " + s.owner + " has duplicate token " + s.tokens[i]);
    }
  }
}

GraphEdge make_schema_edge(const SchemaSet& parent, const SchemaSet& child) {
  GraphEdge e;
  e.parent = parent.owner;
  e.child = child.owner;
  e.stage = Stage::Schema;
  e.common_columns = child.tokens;  // child schema is contained in parent's
  return e;
}

}  // namespace

SchemaGraphResult build_schema_graph(std::vector<SchemaSet> schemas, OpCounters& counters) {
  std::unordered_set<std::string> owners;
  for (SchemaSet& s : schemas) {
    normalize_schema(s);
    if (!owners.insert(s.owner).second) {
      throw SchemaError("duplicate schema owner: " + s.owner);
    }
  }

  // Largest schemas first so every potential center precedes the schemas it
  // can absorb; ties resolved by owner for determinism (the emitted edge set
  // does not depend on the tie order).
  std::sort(schemas.begin(), schemas.end(), [](const SchemaSet& a, const SchemaSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.owner < b.owner;
  });
  const size_t n = schemas.size();
  if (n >= 2) {
    counters.schema_pair_ops +=
        static_cast<uint64_t>(std::ceil(static_cast<double>(n) * std::log2(static_cast<double>(n))));
  }

  SchemaGraphResult result;
  result.graph.stage_label = Stage::Schema;
  for (const SchemaSet& s : schemas) result.graph.nodes.insert(s.owner);

  for (const SchemaSet& s : schemas) {
    bool joined = false;
    for (SchemaCluster& cluster : result.clusters) {
      ++counters.schema_pair_ops;
      if (s.size() <= cluster.center.size() && schema_contained(s, cluster.center)) {
        cluster.members.push_back(s);
        joined = true;
      }
    }
    if (!joined) {
      SchemaCluster cluster;
      cluster.center = s;
      cluster.members.push_back(s);
      result.clusters.push_back(std::move(cluster));
    }
  }

  // Members are ordered largest-first, so containment across a pair can only
  // run from the later member into the earlier one, except at equal sizes
  // where both directions are possible (exact duplicates).
  for (const SchemaCluster& cluster : result.clusters) {
    const auto& m = cluster.members;
    for (size_t i = 0; i < m.size(); ++i) {
      for (size_t j = i + 1; j < m.size(); ++j) {
        ++counters.schema_pair_ops;
        if (schema_contained(m[j], m[i])) {
          result.graph.edges.try_emplace({m[i].owner, m[j].owner}, make_schema_edge(m[i], m[j]));
        }
        if (m[i].size() == m[j].size() && schema_contained(m[i], m[j])) {
          result.graph.edges.try_emplace({m[j].owner, m[i].owner}, make_schema_edge(m[j], m[i]));
        }
      }
    }
  }

  counters.edges_schema += result.graph.edge_count();
  return result;
}

void save_clusters(const std::filesystem::path& path, const std::vector<SchemaCluster>& clusters) {
  ordered_json arr = ordered_json::array();
  std::vector<const SchemaCluster*> sorted;
  for (const SchemaCluster& c : clusters) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(), [](const SchemaCluster* a, const SchemaCluster* b) {
    return a->center.owner < b->center.owner;
  });
  for (const SchemaCluster* c : sorted) {
    std::vector<std::string> members;
    for (const SchemaSet& m : c->members) members.push_back(m.owner);
    std::sort(members.begin(), members.end());
    arr.push_back({{"center", c->center.owner}, {"members", members}});
  }
  ordered_json j;
  j["clusters"] = std::move(arr);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write clusters file: " + path.string());
  out << j.dump(2) << "\n";
}

std::vector<SchemaCluster> load_clusters(const std::filesystem::path& path, const Lake& lake) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open clusters file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  ordered_json j;
  try {
    j = ordered_json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  std::vector<SchemaCluster> clusters;
  for (const auto& cj : j.at("clusters")) {
    SchemaCluster c;
    c.center = flatten_schema(lake.dataset(cj.at("center").get<std::string>()));
    for (const auto& mj : cj.at("members")) {
      c.members.push_back(flatten_schema(lake.dataset(mj.get<std::string>())));
    }
    clusters.push_back(std::move(c));
  }
  return clusters;
}

}  // namespace lakeprune
