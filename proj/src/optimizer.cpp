#include "lakeprune/optimizer.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lakeprune/errors.hpp"
#include "lakeprune/rng.hpp"

using nlohmann::ordered_json;

namespace lakeprune {

namespace {

std::string read_text(const std::filesystem::path& file, const char* what) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError(std::string("cannot open ") + what + " file: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& file, const std::string& text, const char* what) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(std::string("cannot write ") + what + " file: " + file.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("short write: " + file.string());
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_config_double(std::string_view text, const std::string& key) {
  std::string_view t = trim(text);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError("bad numeric value for " + key + ": '" + std::string(t) + "'");
  }
  return value;
}

}  // namespace

CostModel load_cost_model(const std::filesystem::path& file) {
  const std::string text = read_text(file, "cost model");
  CostModel cost;
  std::map<std::string, double*> fields = {
      {"storage_per_byte", &cost.storage_per_byte},
      {"maintenance_per_byte", &cost.maintenance_per_byte},
      {"read_per_byte", &cost.read_per_byte},
      {"write_per_byte", &cost.write_per_byte},
      {"read_latency_per_byte", &cost.read_latency_per_byte},
      {"write_latency_per_byte", &cost.write_latency_per_byte},
      {"latency_threshold", &cost.latency_threshold},
  };
  std::istringstream lines(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(file.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key(trim(body.substr(0, eq)));
    auto it = fields.find(key);
    if (it == fields.end()) {
      throw ParseError(file.string() + ":" + std::to_string(lineno) + ": unknown key '" + key +
                       "'");
    }
    double value = parse_config_double(body.substr(eq + 1), key);
    if (value < 0.0) throw InvalidArgument("cost model key " + key + " must be nonnegative");
    *it->second = value;
  }
  return cost;
}

EconMap load_economics(const std::filesystem::path& file) {
  ordered_json j;
  try {
    j = ordered_json::parse(read_text(file, "economics"));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
  EconMap econ;
  try {
    for (const auto& nj : j.at("nodes")) {
      NodeEconomics n;
      n.node = nj.at("name").get<std::string>();
      n.size_bytes = nj.at("size_bytes").get<double>();
      n.maintenance_freq = nj.at("maintenance_freq").get<double>();
      n.access_freq = nj.at("access_freq").get<double>();
      n.rows = nj.at("rows").get<uint64_t>();
      if (n.size_bytes < 0 || n.maintenance_freq < 0 || n.access_freq < 0) {
        throw InvalidArgument("economics for " + n.node + " must be nonnegative");
      }
      if (!econ.emplace(n.node, n).second) {
        throw ParseError("duplicate economics entry: " + n.node);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
  return econ;
}

void save_economics(const EconMap& econ, const std::filesystem::path& file) {
  ordered_json nodes = ordered_json::array();
  for (const auto& [name, n] : econ) {
    ordered_json nj;
    nj["name"] = name;
    nj["size_bytes"] = n.size_bytes;
    nj["maintenance_freq"] = n.maintenance_freq;
    nj["access_freq"] = n.access_freq;
    nj["rows"] = n.rows;
    nodes.push_back(std::move(nj));
  }
  ordered_json j;
  j["nodes"] = std::move(nodes);
  write_text(file, j.dump(2) + "\n", "economics");
}

std::vector<TransformLabel> load_transforms(const std::filesystem::path& file) {
  ordered_json j;
  try {
    j = ordered_json::parse(read_text(file, "transforms"));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
  std::vector<TransformLabel> labels;
  std::set<std::pair<std::string, std::string>> seen;
  try {
    for (const auto& tj : j.at("transforms")) {
      TransformLabel t;
      t.parent = tj.at("parent").get<std::string>();
      t.child = tj.at("child").get<std::string>();
      t.transform = tj.at("transform").get<std::string>();
      if (!seen.emplace(t.parent, t.child).second) {
        throw ParseError("duplicate transform label: " + t.parent + " -> " + t.child);
      }
      labels.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
  return labels;
}

void save_transforms(const std::vector<TransformLabel>& labels,
                     const std::filesystem::path& file) {
  ordered_json arr = ordered_json::array();
  for (const auto& t : labels) {
    ordered_json tj;
    tj["parent"] = t.parent;
    tj["child"] = t.child;
    tj["transform"] = t.transform;
    arr.push_back(std::move(tj));
  }
  ordered_json j;
  j["transforms"] = std::move(arr);
  write_text(file, j.dump(2) + "\n", "transforms");
}

const NodeEconomics& econ_for(const EconMap& econ, const std::string& node) {
  auto it = econ.find(node);
  if (it == econ.end()) throw NotFound("no economics entry for node: " + node);
  return it->second;
}

AnnotateResult annotate_edges(const ContainmentGraph& graph,
                              const std::vector<TransformLabel>& labels,
                              const EconMap& econ, const CostModel& cost) {
  std::map<std::pair<std::string, std::string>, const TransformLabel*> by_pair;
  for (const auto& t : labels) by_pair[{t.parent, t.child}] = &t;
  for (const auto& node : graph.nodes) econ_for(econ, node);

  AnnotateResult result;
  for (const auto& [key, edge] : graph.edges) {
    auto it = by_pair.find(key);
    if (it == by_pair.end()) {
      ++result.dropped_unlabeled;
      continue;
    }
    const double sp = econ_for(econ, edge.parent).size_bytes;
    const double sc = econ_for(econ, edge.child).size_bytes;
    AnnotatedEdge a;
    a.parent = edge.parent;
    a.child = edge.child;
    a.transform = it->second->transform;
    a.recon_cost = cost.read_per_byte * sp + cost.write_per_byte * sc;
    a.recon_latency = cost.read_latency_per_byte * sp + cost.write_latency_per_byte * sc;
    if (a.recon_latency >= cost.latency_threshold) {
      ++result.dropped_latency;
      continue;
    }
    result.edges.push_back(std::move(a));
  }
  return result;
}

double retention_cost(const NodeEconomics& econ, const CostModel& cost) {
  return (cost.storage_per_byte + cost.maintenance_per_byte * econ.maintenance_freq) *
         econ.size_bytes;
}

void save_plan(const RetentionPlan& plan, const std::filesystem::path& file) {
  ordered_json j;
  j["objective"] = plan.objective;
  j["retentions"] = std::vector<std::string>(plan.retained.begin(), plan.retained.end());
  j["deletions"] = std::vector<std::string>(plan.deleted.begin(), plan.deleted.end());
  ordered_json recon = ordered_json::array();
  for (const auto& [child, via] : plan.reconstruct) {
    ordered_json rj;
    rj["child"] = child;
    rj["parent"] = via.first;
    rj["recon_cost"] = via.second;
    recon.push_back(std::move(rj));
  }
  j["reconstruct_via"] = std::move(recon);
  write_text(file, j.dump(2) + "\n", "plan");
}

RetentionPlan load_plan(const std::filesystem::path& file) {
  ordered_json j;
  try {
    j = ordered_json::parse(read_text(file, "plan"));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
  RetentionPlan plan;
  try {
    plan.objective = j.at("objective").get<double>();
    for (const auto& n : j.at("retentions")) plan.retained.insert(n.get<std::string>());
    for (const auto& n : j.at("deletions")) plan.deleted.insert(n.get<std::string>());
    for (const auto& rj : j.at("reconstruct_via")) {
      plan.reconstruct[rj.at("child").get<std::string>()] = {
          rj.at("parent").get<std::string>(), rj.at("recon_cost").get<double>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
  return plan;
}

void validate_plan(const RetentionPlan& plan, const std::vector<std::string>& nodes,
                   const EconMap& econ, const std::vector<AnnotatedEdge>& edges,
                   const CostModel& cost) {
  if (plan.retained.size() + plan.deleted.size() != nodes.size()) {
    throw StructureError("plan does not cover every node exactly once");
  }
  for (const auto& node : nodes) {
    if (plan.retained.count(node) + plan.deleted.count(node) != 1) {
      throw StructureError("node is not assigned exactly one fate: " + node);
    }
  }
  std::map<std::pair<std::string, std::string>, double> recon_of;
  for (const auto& e : edges) recon_of[{e.parent, e.child}] = e.recon_cost;

  double objective = 0.0;
  for (const auto& node : plan.retained) {
    objective += retention_cost(econ_for(econ, node), cost);
  }
  for (const auto& node : plan.deleted) {
    auto via = plan.reconstruct.find(node);
    if (via == plan.reconstruct.end()) {
      throw StructureError("deleted node has no reconstruction source: " + node);
    }
    const auto& [parent, recon_cost_value] = via->second;
    if (!plan.retained.count(parent)) {
      throw StructureError("reconstruction parent of " + node + " is not retained: " + parent);
    }
    auto edge = recon_of.find({parent, node});
    if (edge == recon_of.end()) {
      throw StructureError("no usable edge " + parent + " -> " + node);
    }
    if (std::abs(edge->second - recon_cost_value) > 1e-9 * std::max(1.0, edge->second)) {
      throw StructureError("plan reconstruction cost diverges on " + node);
    }
    objective += econ_for(econ, node).access_freq * edge->second;
  }
  if (std::abs(objective - plan.objective) > 1e-6 * std::max(1.0, std::abs(objective))) {
    throw StructureError("plan objective does not match its assignments");
  }
}

namespace {

struct BnbProblem {
  std::vector<std::string> names;                         // sorted, index order
  std::vector<double> ret;                                // retention cost
  std::vector<double> access;                             // weekly access freq
  std::vector<std::vector<std::pair<int, double>>> parents;  // (parent idx, recon cost)
  std::vector<double> cheapest;  // min(ret, best possible deletion), for bounds
};

BnbProblem build_problem(const std::vector<std::string>& nodes, const EconMap& econ,
                         const std::vector<AnnotatedEdge>& edges, const CostModel& cost) {
  BnbProblem p;
  p.names = nodes;
  std::sort(p.names.begin(), p.names.end());
  std::map<std::string, int> index;
  for (size_t i = 0; i < p.names.size(); ++i) index[p.names[i]] = static_cast<int>(i);

  p.ret.resize(p.names.size());
  p.access.resize(p.names.size());
  p.parents.resize(p.names.size());
  for (size_t i = 0; i < p.names.size(); ++i) {
    const auto& e = econ_for(econ, p.names[i]);
    p.ret[i] = retention_cost(e, cost);
    p.access[i] = e.access_freq;
  }
  for (const auto& e : edges) {
    auto pi = index.find(e.parent);
    auto ci = index.find(e.child);
    if (pi == index.end() || ci == index.end()) {
      throw InvalidArgument("edge endpoint is not an optimization node: " + e.parent + " -> " +
                            e.child);
    }
    p.parents[ci->second].emplace_back(pi->second, e.recon_cost);
  }
  // Cheaper parents first; name breaks ties so the chosen source is stable.
  for (size_t c = 0; c < p.parents.size(); ++c) {
    std::sort(p.parents[c].begin(), p.parents[c].end(),
              [&](const std::pair<int, double>& a, const std::pair<int, double>& b) {
                double ca = p.access[c] * a.second, cb = p.access[c] * b.second;
                if (ca != cb) return ca < cb;
                return p.names[a.first] < p.names[b.first];
              });
  }
  p.cheapest.resize(p.names.size());
  for (size_t i = 0; i < p.names.size(); ++i) {
    double best = p.ret[i];
    if (!p.parents[i].empty()) {
      best = std::min(best, p.access[i] * p.parents[i].front().second);
    }
    p.cheapest[i] = best;
  }
  return p;
}

struct BnbSearch {
  const BnbProblem& p;
  std::vector<char> retained;  // per node, current branch
  std::vector<char> best_retained;
  double best_obj = std::numeric_limits<double>::infinity();
  std::vector<double> tail_bound;  // sum of cheapest[i..]
  uint64_t explored = 0;

  explicit BnbSearch(const BnbProblem& problem) : p(problem) {
    retained.assign(p.names.size(), 1);
    tail_bound.assign(p.names.size() + 1, 0.0);
    for (size_t i = p.names.size(); i > 0; --i) {
      tail_bound[i - 1] = tail_bound[i] + p.cheapest[i - 1];
    }
  }

  // Objective of the full assignment in `retained`, or infinity when some
  // deleted node lacks a retained parent.
  double exact_objective() const {
    double total = 0.0;
    for (size_t i = 0; i < p.names.size(); ++i) {
      if (retained[i]) {
        total += p.ret[i];
        continue;
      }
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [parent, recon] : p.parents[i]) {
        if (retained[parent]) {
          best = p.access[i] * recon;
          break;  // parents are sorted by effective cost
        }
      }
      if (!std::isfinite(best)) return best;
      total += best;
    }
    return total;
  }

  void dfs(size_t i, double partial) {
    ++explored;
    if (partial + tail_bound[i] >= best_obj) return;
    if (i == p.names.size()) {
      double exact = exact_objective();
      if (exact < best_obj) {
        best_obj = exact;
        best_retained = retained;
      }
      return;
    }
    // Retain first so equal-cost outcomes settle on the more conservative plan.
    retained[i] = 1;
    dfs(i + 1, partial + p.ret[i]);
    if (!p.parents[i].empty()) {
      retained[i] = 0;
      dfs(i + 1, partial + p.access[i] * p.parents[i].front().second);
    }
    retained[i] = 1;
  }
};

}  // namespace

RetentionPlan solve_opt_ret(const std::vector<std::string>& nodes, const EconMap& econ,
                            const std::vector<AnnotatedEdge>& edges, const CostModel& cost,
                            SolveStats* stats) {
  BnbProblem p = build_problem(nodes, econ, edges, cost);
  BnbSearch search(p);
  search.dfs(0, 0.0);
  if (stats) stats->bnb_nodes_explored += search.explored;

  RetentionPlan plan;
  plan.objective = p.names.empty() ? 0.0 : search.best_obj;
  for (size_t i = 0; i < p.names.size(); ++i) {
    if (search.best_retained[i]) {
      plan.retained.insert(p.names[i]);
      continue;
    }
    plan.deleted.insert(p.names[i]);
    for (const auto& [parent, recon] : p.parents[i]) {
      if (search.best_retained[parent]) {
        plan.reconstruct[p.names[i]] = {p.names[parent], recon};
        break;
      }
    }
  }
  validate_plan(plan, p.names, econ, edges, cost);
  return plan;
}

LineDecomposition detect_line_graphs(const std::vector<std::string>& nodes,
                                     const std::vector<AnnotatedEdge>& edges) {
  std::vector<std::string> sorted_nodes = nodes;
  std::sort(sorted_nodes.begin(), sorted_nodes.end());
  std::map<std::string, int> index;
  for (size_t i = 0; i < sorted_nodes.size(); ++i) index[sorted_nodes[i]] = static_cast<int>(i);

  const int n = static_cast<int>(sorted_nodes.size());
  std::vector<int> in_deg(n, 0), out_deg(n, 0), next(n, -1);
  std::vector<std::vector<int>> und(n);
  std::vector<std::vector<int>> edges_at(n);
  for (size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    auto pi = index.find(e.parent);
    auto ci = index.find(e.child);
    if (pi == index.end() || ci == index.end()) {
      throw InvalidArgument("edge endpoint is not an optimization node: " + e.parent + " -> " +
                            e.child);
    }
    ++out_deg[pi->second];
    ++in_deg[ci->second];
    next[pi->second] = ci->second;
    und[pi->second].push_back(ci->second);
    und[ci->second].push_back(pi->second);
    edges_at[pi->second].push_back(static_cast<int>(k));
    edges_at[ci->second].push_back(static_cast<int>(k));
  }

  LineDecomposition out;
  std::vector<char> seen(n, 0);
  std::set<int> residual_edge_ids;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> component;
    std::deque<int> queue{start};
    seen[start] = 1;
    size_t component_edges = 0;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      component.push_back(v);
      component_edges += out_deg[v];
      for (int w : und[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    bool is_line = component.size() >= 2 && component_edges == component.size() - 1;
    int head = -1;
    for (int v : component) {
      if (in_deg[v] > 1 || out_deg[v] > 1) is_line = false;
      if (in_deg[v] == 0) head = (head == -1) ? v : -2;
    }
    if (is_line && head >= 0) {
      std::vector<std::string> path;
      for (int v = head; v != -1; v = next[v]) path.push_back(sorted_nodes[v]);
      if (path.size() == component.size()) {
        out.lines.push_back(std::move(path));
        continue;
      }
    }
    for (int v : component) {
      out.residual_nodes.push_back(sorted_nodes[v]);
      for (int k : edges_at[v]) residual_edge_ids.insert(k);
    }
  }
  std::sort(out.residual_nodes.begin(), out.residual_nodes.end());
  for (int k : residual_edge_ids) out.residual_edges.push_back(edges[k]);
  std::sort(out.lines.begin(), out.lines.end());
  return out;
}

RetentionPlan solve_dyn_lin(const std::vector<std::string>& path_nodes, const EconMap& econ,
                            const std::vector<AnnotatedEdge>& edges, const CostModel& cost,
                            uint64_t* ops) {
  if (path_nodes.empty()) throw InvalidArgument("empty path");
  std::map<std::pair<std::string, std::string>, double> recon_of;
  for (const auto& e : edges) recon_of[{e.parent, e.child}] = e.recon_cost;

  const size_t n = path_nodes.size();
  std::vector<double> ret(n), del_cost(n, 0.0);
  uint64_t steps = 0;
  for (size_t i = 0; i < n; ++i) {
    ret[i] = retention_cost(econ_for(econ, path_nodes[i]), cost);
    if (i > 0) {
      auto it = recon_of.find({path_nodes[i - 1], path_nodes[i]});
      if (it == recon_of.end()) {
        throw StructureError("path is missing edge " + path_nodes[i - 1] + " -> " + path_nodes[i]);
      }
      del_cost[i] = econ_for(econ, path_nodes[i]).access_freq * it->second;
    }
  }

  // alg[i]: optimal cost of the prefix ending at i. A deleted node needs its
  // predecessor retained, so deletions can never be adjacent.
  std::vector<double> alg(n, 0.0);
  std::vector<char> deleted(n, 0);
  alg[0] = ret[0];
  ++steps;
  for (size_t i = 1; i < n; ++i) {
    const double keep = ret[i] + alg[i - 1];
    const double drop = del_cost[i] + ret[i - 1] + (i >= 2 ? alg[i - 2] : 0.0);
    alg[i] = std::min(keep, drop);
    deleted[i] = drop < keep;  // tie keeps the node
    steps += 3;
  }
  if (ops) *ops += steps;

  RetentionPlan plan;
  plan.objective = alg[n - 1];
  size_t i = n;
  while (i > 0) {
    --i;
    if (deleted[i]) {
      plan.deleted.insert(path_nodes[i]);
      plan.reconstruct[path_nodes[i]] = {path_nodes[i - 1],
                                         recon_of.at({path_nodes[i - 1], path_nodes[i]})};
      plan.retained.insert(path_nodes[i - 1]);
      --i;
    } else {
      plan.retained.insert(path_nodes[i]);
    }
  }
  return plan;
}

RetentionPlan optimize_retention(const std::vector<std::string>& nodes, const EconMap& econ,
                                 const std::vector<AnnotatedEdge>& edges, const CostModel& cost,
                                 bool force_exhaustive, SolveStats* stats) {
  RetentionPlan merged;
  auto absorb = [&merged](const RetentionPlan& part) {
    merged.objective += part.objective;
    merged.retained.insert(part.retained.begin(), part.retained.end());
    merged.deleted.insert(part.deleted.begin(), part.deleted.end());
    merged.reconstruct.insert(part.reconstruct.begin(), part.reconstruct.end());
  };

  if (force_exhaustive) {
    absorb(solve_opt_ret(nodes, econ, edges, cost, stats));
  } else {
    LineDecomposition dec = detect_line_graphs(nodes, edges);
    if (stats) stats->line_components += dec.lines.size();
    for (const auto& line : dec.lines) {
      absorb(solve_dyn_lin(line, econ, edges, cost, stats ? &stats->dyn_ops : nullptr));
    }
    if (!dec.residual_nodes.empty()) {
      absorb(solve_opt_ret(dec.residual_nodes, econ, dec.residual_edges, cost, stats));
    }
  }
  std::vector<std::string> all_nodes = nodes;
  std::sort(all_nodes.begin(), all_nodes.end());
  validate_plan(merged, all_nodes, econ, edges, cost);
  return merged;
}

SavingsReport savings_report(const RetentionPlan& plan, const EconMap& econ,
                             const CostModel& cost, double horizon_periods,
                             std::optional<double> accesses_per_week) {
  if (horizon_periods < 0) throw InvalidArgument("horizon must be nonnegative");
  if (accesses_per_week && *accesses_per_week < 0) {
    throw InvalidArgument("accesses per week must be nonnegative");
  }
  SavingsReport report;
  report.horizon_periods = horizon_periods;
  report.deleted_count = plan.deleted.size();
  double scanned_rows = 0.0;
  for (const auto& node : plan.deleted) {
    const auto& e = econ_for(econ, node);
    const double weekly = accesses_per_week.value_or(e.access_freq);
    const double accesses = weekly * kWeeksPerPeriod * horizon_periods;
    report.storage_saved += cost.storage_per_byte * e.size_bytes * horizon_periods;
    report.maintenance_saved +=
        cost.maintenance_per_byte * e.maintenance_freq * e.size_bytes * horizon_periods;
    auto via = plan.reconstruct.find(node);
    if (via == plan.reconstruct.end()) {
      throw StructureError("deleted node has no reconstruction source: " + node);
    }
    report.reconstruction_cost += accesses * via->second.second;
    scanned_rows += static_cast<double>(e.rows) * accesses;
  }
  report.net_savings =
      report.storage_saved + report.maintenance_saved - report.reconstruction_cost;
  report.row_scan_savings = std::llround(scanned_rows);
  return report;
}

void save_savings(const SavingsReport& report, const std::filesystem::path& file) {
  ordered_json j;
  j["horizon_periods"] = report.horizon_periods;
  j["weeks_per_period"] = kWeeksPerPeriod;
  j["deleted_count"] = report.deleted_count;
  j["storage_saved"] = report.storage_saved;
  j["maintenance_saved"] = report.maintenance_saved;
  j["reconstruction_cost"] = report.reconstruction_cost;
  j["net_savings"] = report.net_savings;
  j["row_scan_savings"] = report.row_scan_savings;
  write_text(file, j.dump(2) + "\n", "savings");
}

BenchRecord random_graph_harness(int n, double edge_prob, uint64_t seed, double alpha) {
  if (n <= 0) throw InvalidArgument("node count must be positive");
  if (edge_prob < 0.0 || edge_prob > 1.0) throw InvalidArgument("edge probability out of range");
  if (alpha <= 1.0) throw InvalidArgument("power law exponent must exceed 1");

  Rng rng(seed);
  auto power_law = [&rng, alpha]() {
    const double u = rng.next_double();
    return std::pow(1.0 - u, -1.0 / (alpha - 1.0));
  };

  std::vector<std::string> names;
  EconMap econ;
  for (int i = 0; i < n; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "n%03d", i);
    NodeEconomics e;
    e.node = buf;
    e.size_bytes = rng.real_in(1e6, 1e9);
    e.maintenance_freq = power_law();
    e.access_freq = power_law();
    e.rows = static_cast<uint64_t>(rng.int_in(1000, 10'000'000));
    names.push_back(e.node);
    econ.emplace(e.node, std::move(e));
  }
  CostModel cost;
  std::vector<AnnotatedEdge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (rng.next_double() >= edge_prob) continue;
      AnnotatedEdge e;
      e.parent = names[i];
      e.child = names[j];
      e.transform = "derived";
      e.recon_cost = cost.read_per_byte * econ.at(e.parent).size_bytes +
                     cost.write_per_byte * econ.at(e.child).size_bytes;
      e.recon_latency = 0.0;
      edges.push_back(std::move(e));
    }
  }

  SolveStats stats;
  const auto t0 = std::chrono::steady_clock::now();
  RetentionPlan plan = optimize_retention(names, econ, edges, cost, false, &stats);
  const auto t1 = std::chrono::steady_clock::now();

  BenchRecord record;
  record.nodes = n;
  record.edges = static_cast<int>(edges.size());
  record.objective = plan.objective;
  record.bnb_nodes_explored = stats.bnb_nodes_explored;
  record.dyn_ops = stats.dyn_ops;
  record.line_components = stats.line_components;
  record.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return record;
}

}  // namespace lakeprune
