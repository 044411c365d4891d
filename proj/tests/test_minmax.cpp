#include "lakeprune/minmax_prune.hpp"

#include <algorithm>

#include "doctest.h"
#include "lakeprune/errors.hpp"
#include "lakeprune/rng.hpp"
#include "lakeprune/schema_graph.hpp"
#include "test_util.hpp"

using namespace lakeprune;
using namespace testutil;

namespace {

GraphEdge edge(const std::string& parent, const std::string& child,
               std::vector<std::string> common) {
  GraphEdge e;
  e.parent = parent;
  e.child = child;
  e.stage = Stage::Schema;
  e.common_columns = std::move(common);
  return e;
}

}  // namespace

TEST_SUITE("minmax") {

TEST_CASE("child ranges inside the parent's survive, others do not") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  int_dataset(lake, "parent", "v", {1, 4, 10});
  int_dataset(lake, "inside", "v", {2, 9});
  int_dataset(lake, "below", "v", {0, 5});
  int_dataset(lake, "above", "v", {5, 11});
  int_dataset(lake, "equal", "v", {1, 10});

  MinMaxOptions options;
  CHECK(min_max_edge_survives(lake, edge("parent", "inside", {"v"}), options));
  CHECK(min_max_edge_survives(lake, edge("parent", "equal", {"v"}), options));
  CHECK_FALSE(min_max_edge_survives(lake, edge("parent", "below", {"v"}), options));
  CHECK_FALSE(min_max_edge_survives(lake, edge("parent", "above", {"v"}), options));
}

TEST_CASE("null-only columns: child side is skipped, parent side disproves") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  std::vector<ColumnDef> cols{{"k", ValueType::Integer}, {"v", ValueType::Integer}};
  lake.create_dataset("parent", cols, {{I(1), I(5)}, {I(2), I(6)}});
  lake.create_dataset("child_nulls", cols, {{I(1), N()}});
  lake.create_dataset("parent_nulls", cols, {{I(1), N()}, {I(2), N()}});
  lake.create_dataset("child_values", cols, {{I(1), I(5)}});

  MinMaxOptions options;
  // A child column with no values cannot contradict any parent range.
  CHECK(min_max_edge_survives(lake, edge("parent", "child_nulls", {"k", "v"}), options));
  // A parent column with no values cannot contain a child that has some.
  CHECK_FALSE(
      min_max_edge_survives(lake, edge("parent_nulls", "child_values", {"k", "v"}), options));
  // Both sides empty on v: nothing to compare.
  CHECK(min_max_edge_survives(lake, edge("parent_nulls", "child_nulls", {"k", "v"}), options));
}

TEST_CASE("type-mismatched and disabled columns are not compared") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  lake.create_dataset("p", {{"v", ValueType::Integer}}, {{I(5)}});
  lake.create_dataset("c_float", {{"v", ValueType::Float}}, {{F(400.0)}});
  int_dataset(lake, "c_int", "v", {400});

  MinMaxOptions options;
  CHECK(comparable_columns(lake.dataset("p"), lake.dataset("c_float"), options).empty());
  // Same name, different type: the range check cannot apply.
  CHECK(min_max_edge_survives(lake, edge("p", "c_float", {"v"}), options));
  // Same type, range violation.
  CHECK_FALSE(min_max_edge_survives(lake, edge("p", "c_int", {"v"}), options));
  // Disabling the type removes the only comparable column.
  options.use_integer = false;
  CHECK(min_max_edge_survives(lake, edge("p", "c_int", {"v"}), options));
}

TEST_CASE("pruning a schema graph relabels survivors and reads no rows") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  int_dataset(lake, "parent", "v", {1, 10});
  int_dataset(lake, "ok", "v", {3});
  int_dataset(lake, "out", "v", {12});

  std::vector<SchemaSet> schemas;
  for (const std::string& n : lake.dataset_names()) {
    schemas.push_back(flatten_schema(lake.dataset(n)));
  }
  OpCounters counters;
  SchemaGraphResult sg = build_schema_graph(schemas, counters);
  // All three share one column, so the schema stage links every pair.
  CHECK(sg.graph.edge_count() == 6);

  const uint64_t scanned_before = lake.rows_scanned();
  ContainmentGraph pruned = min_max_prune(sg.graph, lake, {}, counters);
  CHECK(lake.rows_scanned() == scanned_before);
  CHECK(counters.metadata_ops == 6);
  CHECK(pruned.stage_label == Stage::MinMax);
  CHECK(counters.edges_minmax == pruned.edge_count());

  CHECK(pruned.has_edge("parent", "ok"));
  CHECK_FALSE(pruned.has_edge("parent", "out"));
  CHECK_FALSE(pruned.has_edge("ok", "out"));
  // Identical single values of "ok" inside "out"? 3 is not in [12, 12].
  CHECK_FALSE(pruned.has_edge("out", "ok"));
  // "out" (12) is not inside parent's [1, 10], but parent's [1,10] is not
  // inside out's [12,12] either.
  CHECK_FALSE(pruned.has_edge("out", "parent"));
  for (const auto& [key, e] : pruned.edges) CHECK(e.stage == Stage::MinMax);

  ContainmentGraph wrong_stage = pruned;
  CHECK_THROWS_AS(min_max_prune(wrong_stage, lake, {}, counters), InvalidArgument);
}

TEST_CASE("never prunes a truly contained pair") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  Rng rng(404);
  int round = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<ColumnDef> cols{
        {"a", ValueType::Integer}, {"b", ValueType::Float}, {"c", ValueType::Text}};
    std::vector<Row> parent_rows;
    const int n = 20 + static_cast<int>(rng.below(60));
    for (int i = 0; i < n; ++i) {
      parent_rows.push_back({rng.next_double() < 0.1 ? N() : I(rng.int_in(-100, 100)),
                             rng.next_double() < 0.1 ? N() : F(rng.real_in(-5, 5)),
                             rng.next_double() < 0.1 ? N() : S("w" + std::to_string(rng.below(9)))});
    }
    std::vector<Row> child_rows;
    for (const Row& row : parent_rows) {
      if (rng.next_double() < 0.4) child_rows.push_back(row);
    }
    const std::string p = "p" + std::to_string(round);
    const std::string c = "c" + std::to_string(round);
    ++round;
    lake.create_dataset(p, cols, parent_rows, 16);
    lake.create_dataset(c, cols, child_rows, 16);
    CHECK(min_max_edge_survives(lake, edge(p, c, {"a", "b", "c"}), {}));
  }
}

}  // TEST_SUITE
