#include "lakeprune/graph_updates.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lakeprune/errors.hpp"

namespace lakeprune {

std::string_view mutation_kind_name(MutationKind kind) {
  switch (kind) {
    case MutationKind::RowsAdded: return "rows_added";
    case MutationKind::ColumnsAdded: return "columns_added";
    case MutationKind::RowsRemoved: return "rows_removed";
    case MutationKind::ColumnsRemoved: return "columns_removed";
  }
  throw InvalidArgument("unknown mutation kind");
}

MutationKind mutation_kind_from_name(std::string_view name) {
  if (name == "rows_added") return MutationKind::RowsAdded;
  if (name == "columns_added") return MutationKind::ColumnsAdded;
  if (name == "rows_removed") return MutationKind::RowsRemoved;
  if (name == "columns_removed") return MutationKind::ColumnsRemoved;
  throw InvalidArgument("unknown mutation kind: " + std::string(name));
}

namespace {

std::map<std::string, SchemaSet> collect_schemas(const std::vector<SchemaCluster>& clusters) {
  std::map<std::string, SchemaSet> out;
  for (const auto& cluster : clusters) {
    for (const auto& member : cluster.members) out.emplace(member.owner, member);
  }
  return out;
}

void check_stage(const ContainmentGraph& graph, const PipelineParams& params) {
  if (graph.stage_label != params.stop_after) {
    throw InvalidArgument("graph stage does not match the requested pipeline depth");
  }
}

// Inserts `s` into every cluster whose center contains it; if none does, `s`
// becomes the center of a new cluster whose membership is derived from the
// containment relation. Returns the owners that could share an edge with `s`.
std::set<std::string> add_schema_to_clusters(std::vector<SchemaCluster>& clusters,
                                             const SchemaSet& s) {
  std::set<std::string> candidates;
  bool joined = false;
  for (auto& cluster : clusters) {
    if (!schema_contained(s, cluster.center)) continue;
    joined = true;
    for (const auto& member : cluster.members) candidates.insert(member.owner);
    cluster.members.push_back(s);
  }
  if (joined) {
    candidates.erase(s.owner);
    return candidates;
  }
  // No center contains s, so nothing in the lake does: the only possible
  // partners are schemas contained in s, and they are exactly the members of
  // the cluster s now centers.
  SchemaCluster fresh;
  fresh.center = s;
  fresh.members.push_back(s);
  auto all = collect_schemas(clusters);
  for (const auto& [owner, schema] : all) {
    if (schema_contained(schema, s)) {
      fresh.members.push_back(schema);
      candidates.insert(owner);
    }
  }
  clusters.push_back(std::move(fresh));
  return candidates;
}

// Removes `owner` everywhere. If it centered a cluster, members left without
// a containing center get re-clustered the same way the batch build would
// have placed them.
void remove_owner_from_clusters(std::vector<SchemaCluster>& clusters, const std::string& owner) {
  std::vector<SchemaSet> orphans;
  for (auto it = clusters.begin(); it != clusters.end();) {
    auto& members = it->members;
    members.erase(std::remove_if(members.begin(), members.end(),
                                 [&](const SchemaSet& m) { return m.owner == owner; }),
                  members.end());
    if (it->center.owner == owner) {
      orphans = std::move(members);
      it = clusters.erase(it);
    } else {
      ++it;
    }
  }
  if (orphans.empty()) return;

  // Largest first, so by the time an orphan is placed, every center that
  // could contain it already exists (a fresh center never contains an
  // earlier, larger orphan).
  std::sort(orphans.begin(), orphans.end(), [](const SchemaSet& a, const SchemaSet& b) {
    if (a.tokens.size() != b.tokens.size()) return a.tokens.size() > b.tokens.size();
    return a.owner < b.owner;
  });
  for (const auto& orphan : orphans) {
    bool joined = false;
    for (auto& cluster : clusters) {
      if (!schema_contained(orphan, cluster.center)) continue;
      joined = true;
      // Pre-existing clusters already list the orphan; clusters promoted
      // from earlier orphans could not see it yet.
      const bool present =
          std::any_of(cluster.members.begin(), cluster.members.end(),
                      [&](const SchemaSet& m) { return m.owner == orphan.owner; });
      if (!present) cluster.members.push_back(orphan);
    }
    if (joined) continue;
    SchemaCluster fresh;
    fresh.center = orphan;
    fresh.members.push_back(orphan);
    auto all = collect_schemas(clusters);
    for (const auto& [member_owner, schema] : all) {
      if (member_owner != orphan.owner && schema_contained(schema, orphan)) {
        fresh.members.push_back(schema);
      }
    }
    clusters.push_back(std::move(fresh));
  }
}

void replace_edge(ContainmentGraph& graph, const std::string& parent, const std::string& child,
                  const std::optional<GraphEdge>& edge) {
  if (graph.has_edge(parent, child)) graph.remove_edge(parent, child);
  if (edge) graph.add_edge(*edge);
}

}  // namespace

UpdateReport add_dataset(PipelineState& state, Lake& lake, const std::string& name,
                         const PipelineParams& params) {
  check_stage(state.graph, params);
  if (state.graph.nodes.count(name) != 0) {
    throw Conflict("dataset already tracked: " + name);
  }
  SchemaSet schema = flatten_schema(lake.dataset(name));

  UpdateReport report;
  auto candidates = add_schema_to_clusters(state.clusters, schema);
  state.graph.nodes.insert(name);
  for (const auto& owner : candidates) {
    ++report.pairs_examined;
    SchemaSet other = flatten_schema(lake.dataset(owner));
    auto out = evaluate_candidate_pair(lake, schema, other, params, report.counters);
    if (out) state.graph.add_edge(*out);
    auto in = evaluate_candidate_pair(lake, other, schema, params, report.counters);
    if (in) state.graph.add_edge(*in);
  }
  state.retention_plan_stale = true;
  return report;
}

UpdateReport mutate_dataset(PipelineState& state, Lake& lake, const std::string& name,
                            MutationKind kind, const PipelineParams& params) {
  check_stage(state.graph, params);
  if (state.graph.nodes.count(name) == 0) {
    throw NotFound("dataset not tracked: " + name);
  }
  auto before = collect_schemas(state.clusters);
  auto old_it = before.find(name);
  if (old_it == before.end()) {
    throw StructureError("cluster state is missing a tracked dataset: " + name);
  }
  SchemaSet schema = flatten_schema(lake.dataset(name));

  const auto& old_tokens = old_it->second.tokens;
  bool schema_grew = std::includes(schema.tokens.begin(), schema.tokens.end(),
                                   old_tokens.begin(), old_tokens.end());
  bool schema_shrank = std::includes(old_tokens.begin(), old_tokens.end(),
                                     schema.tokens.begin(), schema.tokens.end());
  switch (kind) {
    case MutationKind::RowsAdded:
    case MutationKind::RowsRemoved:
      if (schema.tokens != old_tokens) {
        throw InvalidArgument("row mutation must not change the column set of " + name);
      }
      break;
    case MutationKind::ColumnsAdded:
      if (!schema_grew) throw InvalidArgument("column addition must keep existing columns of " + name);
      break;
    case MutationKind::ColumnsRemoved:
      if (!schema_shrank) throw InvalidArgument("column removal must not introduce columns in " + name);
      break;
  }

  if (schema.tokens != old_tokens) {
    remove_owner_from_clusters(state.clusters, name);
    add_schema_to_clusters(state.clusters, schema);
  }

  // Additive changes can only widen what the node contains, so its existing
  // outgoing edges stay valid and the samples behind them are unchanged.
  // The node's own content did change, which can break edges pointing at it
  // either way, so everything else is recomputed.
  bool additive = kind == MutationKind::RowsAdded || kind == MutationKind::ColumnsAdded;

  UpdateReport report;
  for (const auto& other_name : state.graph.nodes) {
    if (other_name == name) continue;
    ++report.pairs_examined;
    SchemaSet other = flatten_schema(lake.dataset(other_name));
    if (!(additive && state.graph.has_edge(name, other_name))) {
      auto out = evaluate_candidate_pair(lake, schema, other, params, report.counters);
      replace_edge(state.graph, name, other_name, out);
    }
    auto in = evaluate_candidate_pair(lake, other, schema, params, report.counters);
    replace_edge(state.graph, other_name, name, in);
  }
  state.retention_plan_stale = true;
  return report;
}

UpdateReport remove_dataset(PipelineState& state, const std::string& name) {
  if (state.graph.nodes.count(name) == 0) {
    throw NotFound("dataset not tracked: " + name);
  }
  UpdateReport report;
  std::vector<std::pair<std::string, std::string>> doomed;
  for (const auto& [key, edge] : state.graph.edges) {
    if (edge.parent == name || edge.child == name) doomed.push_back(key);
  }
  for (const auto& [parent, child] : doomed) state.graph.remove_edge(parent, child);
  state.graph.nodes.erase(name);
  remove_owner_from_clusters(state.clusters, name);
  state.retention_plan_stale = true;
  return report;
}

}  // namespace lakeprune
