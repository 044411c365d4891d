#include "lakeprune/graph.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lakeprune/errors.hpp"

using nlohmann::ordered_json;

namespace lakeprune {

std::string_view stage_name(Stage stage) {
  switch (stage) {
    case Stage::Schema: return "SGB";
    case Stage::MinMax: return "MMP";
    case Stage::Content: return "CLP";
    case Stage::Truth: return "TRUTH";
  }
  throw Error("unreachable stage");
}

Stage stage_from_name(std::string_view name) {
  if (name == "SGB") return Stage::Schema;
  if (name == "MMP") return Stage::MinMax;
  if (name == "CLP") return Stage::Content;
  if (name == "TRUTH") return Stage::Truth;
  throw ParseError("unknown stage name: " + std::string(name));
}

void ContainmentGraph::add_edge(GraphEdge edge) {
  if (edge.parent == edge.child) {
    throw InvalidArgument("self edge on node " + edge.parent);
  }
  if (!nodes.count(edge.parent) || !nodes.count(edge.child)) {
    throw InvalidArgument("edge endpoints must be graph nodes: " + edge.parent + " -> " +
                          edge.child);
  }
  EdgeKey key{edge.parent, edge.child};
  edges[std::move(key)] = std::move(edge);
}

void ContainmentGraph::remove_edge(const std::string& parent, const std::string& child) {
  if (edges.erase({parent, child}) == 0) {
    throw NotFound("no such edge: " + parent + " -> " + child);
  }
}

std::string ContainmentGraph::serialize() const {
  ordered_json j;
  j["stage"] = std::string(stage_name(stage_label));
  j["nodes"] = std::vector<std::string>(nodes.begin(), nodes.end());
  ordered_json edges_json = ordered_json::array();
  for (const auto& [key, edge] : edges) {
    ordered_json ej;
    ej["parent"] = edge.parent;
    ej["child"] = edge.child;
    ej["stage"] = std::string(stage_name(edge.stage));
    ej["common_columns"] = edge.common_columns;
    edges_json.push_back(std::move(ej));
  }
  j["edges"] = std::move(edges_json);
  return j.dump(2) + "\n";
}

ContainmentGraph ContainmentGraph::deserialize(const std::string& text,
                                               const std::string& origin) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
  ContainmentGraph g;
  try {
    g.stage_label = stage_from_name(j.at("stage").get<std::string>());
    for (const auto& n : j.at("nodes")) g.nodes.insert(n.get<std::string>());
    for (const auto& ej : j.at("edges")) {
      GraphEdge edge;
      edge.parent = ej.at("parent").get<std::string>();
      edge.child = ej.at("child").get<std::string>();
      edge.stage = stage_from_name(ej.at("stage").get<std::string>());
      for (const auto& c : ej.at("common_columns")) {
        edge.common_columns.push_back(c.get<std::string>());
      }
      g.add_edge(std::move(edge));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
  return g;
}

void save_graph(const std::filesystem::path& path, const ContainmentGraph& graph) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write graph file: " + path.string());
  const std::string text = graph.serialize();
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("short write: " + path.string());
}

ContainmentGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open graph file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ContainmentGraph::deserialize(buf.str(), path.string());
}

}  // namespace lakeprune
