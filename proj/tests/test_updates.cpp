#include "lakeprune/graph_updates.hpp"

#include <string>
#include <vector>

#include "doctest.h"
#include "lakeprune/errors.hpp"
#include "test_util.hpp"

using namespace lakeprune;
using namespace testutil;

namespace {

PipelineState state_of(const PipelineResult& r) {
  return PipelineState{r.final_graph(), r.clusters, false};
}

// Incremental maintenance is only trustworthy if its graph is the graph a
// batch rerun would produce, byte for byte.
void check_matches_rerun(Lake& lake, const PipelineState& state, const PipelineParams& params) {
  PipelineResult fresh = run_pipeline(lake, params);
  CHECK(state.graph.serialize() == fresh.final_graph().serialize());
}

std::vector<Row> int_rows(const std::vector<int64_t>& values) {
  std::vector<Row> rows;
  for (int64_t v : values) rows.push_back({I(v)});
  return rows;
}

}  // namespace

TEST_SUITE("updates") {

TEST_CASE("mutation kinds map to wire names both ways") {
  for (MutationKind k : {MutationKind::RowsAdded, MutationKind::ColumnsAdded,
                         MutationKind::RowsRemoved, MutationKind::ColumnsRemoved}) {
    CHECK(mutation_kind_from_name(mutation_kind_name(k)) == k);
  }
  CHECK(mutation_kind_name(MutationKind::RowsAdded) == "rows_added");
  CHECK_THROWS_AS(mutation_kind_from_name("rows_dropped"), InvalidArgument);
}

TEST_CASE("adding a dataset lands it in the right clusters and edges") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  int_dataset(lake, "big", "v", {1, 2, 3, 4, 5, 6});
  int_dataset(lake, "small", "v", {2, 3});

  PipelineParams params;
  params.clp.seed = 11;
  PipelineState state = state_of(run_pipeline(lake, params));
  CHECK(state.graph.has_edge("big", "small"));

  int_dataset(lake, "mid", "v", {1, 2, 3});
  UpdateReport rep = add_dataset(state, lake, "mid", params);
  CHECK(rep.pairs_examined > 0);
  CHECK(state.graph.nodes.count("mid") == 1);
  CHECK(state.graph.has_edge("big", "mid"));
  CHECK(state.graph.has_edge("mid", "small"));
  CHECK_FALSE(state.graph.has_edge("small", "mid"));
  CHECK(state.retention_plan_stale);
  check_matches_rerun(lake, state, params);

  CHECK_THROWS_AS(add_dataset(state, lake, "mid", params), Conflict);
  CHECK_THROWS_AS(add_dataset(state, lake, "ghost", params), NotFound);
}

TEST_CASE("a schema-disjoint addition stays isolated") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  int_dataset(lake, "a", "v", {1, 2});
  PipelineParams params;
  PipelineState state = state_of(run_pipeline(lake, params));

  int_dataset(lake, "b", "w", {1, 2});
  UpdateReport rep = add_dataset(state, lake, "b", params);
  CHECK(rep.pairs_examined == 0);
  CHECK(state.graph.nodes.count("b") == 1);
  CHECK(state.graph.edge_count() == 0);
  check_matches_rerun(lake, state, params);
}

TEST_CASE("identical schemas produce edges in both directions") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  int_dataset(lake, "a", "v", {1, 2, 3});
  PipelineParams params;
  params.clp.seed = 3;
  PipelineState state = state_of(run_pipeline(lake, params));

  int_dataset(lake, "twin", "v", {1, 2, 3});
  add_dataset(state, lake, "twin", params);
  CHECK(state.graph.has_edge("a", "twin"));
  CHECK(state.graph.has_edge("twin", "a"));
  check_matches_rerun(lake, state, params);
}

TEST_CASE("additive row growth keeps outgoing edges and re-checks incoming") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  int_dataset(lake, "top", "v", {1, 2, 3, 4, 5, 6, 7, 8});
  int_dataset(lake, "mid", "v", {2, 3, 4});
  int_dataset(lake, "leaf", "v", {3, 4});

  PipelineParams params;
  params.clp.seed = 17;
  PipelineState state = state_of(run_pipeline(lake, params));
  REQUIRE(state.graph.has_edge("top", "mid"));
  REQUIRE(state.graph.has_edge("mid", "leaf"));

  // Rows appended to mid stay inside top, but push mid past leaf's reach:
  // mid's outgoing edge to leaf must survive untouched, while top -> mid and
  // leaf-side edges are re-derived.
  lake.replace_dataset("mid", {{"v", ValueType::Integer}}, int_rows({2, 3, 4, 5, 6}));
  UpdateReport rep = mutate_dataset(state, lake, "mid", MutationKind::RowsAdded, params);
  CHECK(rep.pairs_examined > 0);
  CHECK(state.graph.has_edge("top", "mid"));
  CHECK(state.graph.has_edge("mid", "leaf"));
  check_matches_rerun(lake, state, params);
}

TEST_CASE("row removal re-checks everything incident") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  int_dataset(lake, "top", "v", {1, 2, 3, 4});
  int_dataset(lake, "sub", "v", {1, 2, 3});

  PipelineParams params;
  params.clp.seed = 29;
  params.clp.sampling = ClpSampling::Uniform;
  params.clp.max_sample_rows = 64;
  PipelineState state = state_of(run_pipeline(lake, params));
  REQUIRE(state.graph.has_edge("top", "sub"));
  REQUIRE_FALSE(state.graph.has_edge("sub", "top"));

  // Shrinking top below sub flips the containment direction.
  lake.replace_dataset("top", {{"v", ValueType::Integer}}, int_rows({1, 2}));
  mutate_dataset(state, lake, "top", MutationKind::RowsRemoved, params);
  CHECK_FALSE(state.graph.has_edge("top", "sub"));
  CHECK(state.graph.has_edge("sub", "top"));
  check_matches_rerun(lake, state, params);
}

TEST_CASE("column growth moves the schema to new clusters") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  lake.create_dataset("wide", {{"a", ValueType::Integer}, {"b", ValueType::Integer}},
                      {{I(1), I(10)}, {I(2), I(20)}});
  lake.create_dataset("grow", {{"a", ValueType::Integer}}, {{I(1)}});

  PipelineParams params;
  params.clp.seed = 5;
  PipelineState state = state_of(run_pipeline(lake, params));
  REQUIRE(state.graph.has_edge("wide", "grow"));

  lake.replace_dataset("grow", {{"a", ValueType::Integer}, {"b", ValueType::Integer}},
                       {{I(1), I(10)}, {I(2), I(20)}});
  mutate_dataset(state, lake, "grow", MutationKind::ColumnsAdded, params);
  CHECK(state.graph.has_edge("wide", "grow"));
  CHECK(state.graph.has_edge("grow", "wide"));
  check_matches_rerun(lake, state, params);
}

TEST_CASE("the declared mutation kind must match what happened") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  int_dataset(lake, "d", "v", {1, 2, 3});
  PipelineParams params;
  PipelineState state = state_of(run_pipeline(lake, params));

  // Schema changed, but a row kind was declared.
  lake.replace_dataset("d", {{"v", ValueType::Integer}, {"w", ValueType::Integer}},
                       {{I(1), I(1)}});
  CHECK_THROWS_AS(mutate_dataset(state, lake, "d", MutationKind::RowsAdded, params),
                  InvalidArgument);
  // ColumnsRemoved requires the new schema to be a subset of the old one.
  CHECK_THROWS_AS(mutate_dataset(state, lake, "d", MutationKind::ColumnsRemoved, params),
                  InvalidArgument);
  // ColumnsAdded fits and brings the state back in line with the lake.
  mutate_dataset(state, lake, "d", MutationKind::ColumnsAdded, params);
  check_matches_rerun(lake, state, params);

  CHECK_THROWS_AS(mutate_dataset(state, lake, "ghost", MutationKind::RowsAdded, params),
                  NotFound);
}

TEST_CASE("removing a cluster center re-homes the orphans") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  lake.create_dataset("center",
                      {{"a", ValueType::Integer}, {"b", ValueType::Integer}, {"c", ValueType::Integer}},
                      {{I(1), I(2), I(3)}});
  lake.create_dataset("ab", {{"a", ValueType::Integer}, {"b", ValueType::Integer}},
                      {{I(1), I(2)}});
  lake.create_dataset("bc", {{"b", ValueType::Integer}, {"c", ValueType::Integer}},
                      {{I(2), I(3)}});

  PipelineParams params;
  params.clp.seed = 101;
  PipelineState state = state_of(run_pipeline(lake, params));
  REQUIRE(state.graph.has_edge("center", "ab"));
  REQUIRE(state.graph.has_edge("center", "bc"));

  remove_dataset(state, "center");
  lake.drop_dataset("center");
  CHECK(state.graph.nodes.count("center") == 0);
  CHECK(state.graph.edge_count() == 0);
  CHECK(state.retention_plan_stale);
  check_matches_rerun(lake, state, params);

  // After re-homing, new arrivals still find the survivors.
  lake.create_dataset("a", {{"a", ValueType::Integer}}, {{I(1)}});
  add_dataset(state, lake, "a", params);
  CHECK(state.graph.has_edge("ab", "a"));
  check_matches_rerun(lake, state, params);

  CHECK_THROWS_AS(remove_dataset(state, "ghost"), NotFound);
}

TEST_CASE("nested orphans survive the loss of their shared center") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  lake.create_dataset("center",
                      {{"a", ValueType::Integer}, {"b", ValueType::Integer}, {"c", ValueType::Integer}},
                      {{I(1), I(2), I(3)}});
  lake.create_dataset("ab", {{"a", ValueType::Integer}, {"b", ValueType::Integer}},
                      {{I(1), I(2)}});
  lake.create_dataset("a", {{"a", ValueType::Integer}}, {{I(1)}});

  PipelineParams params;
  params.clp.seed = 71;
  PipelineState state = state_of(run_pipeline(lake, params));

  // "ab" gets promoted to a center and "a", though covered by it, must end
  // up in the promoted cluster's member list, or it falls out of tracking.
  remove_dataset(state, "center");
  lake.drop_dataset("center");
  check_matches_rerun(lake, state, params);

  // Both survivors must still be reachable: as a mutation target...
  lake.replace_dataset("a", {{"a", ValueType::Integer}}, {{I(1)}, {I(1)}});
  mutate_dataset(state, lake, "a", MutationKind::RowsAdded, params);
  check_matches_rerun(lake, state, params);

  // ...and as edge candidates for a new arrival.
  lake.create_dataset("a2", {{"a", ValueType::Integer}}, {{I(1)}});
  add_dataset(state, lake, "a2", params);
  CHECK(state.graph.has_edge("ab", "a2"));
  CHECK(state.graph.has_edge("a", "a2"));
  CHECK(state.graph.has_edge("a2", "a"));
  check_matches_rerun(lake, state, params);
}

TEST_CASE("updates demand a graph from the matching stage") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  int_dataset(lake, "a", "v", {1, 2});
  PipelineParams schema_only;
  schema_only.stop_after = Stage::Schema;
  PipelineState state = state_of(run_pipeline(lake, schema_only));

  int_dataset(lake, "b", "v", {1});
  PipelineParams full;  // stops after Content, mismatch
  CHECK_THROWS_AS(add_dataset(state, lake, "b", full), InvalidArgument);
  add_dataset(state, lake, "b", schema_only);
  check_matches_rerun(lake, state, schema_only);
}

TEST_CASE("a random mutation storm tracks the batch graph") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  Rng rng(2024);

  std::vector<std::string> names;
  for (int i = 0; i < 10; ++i) {
    std::vector<int64_t> vals;
    const int n = 5 + static_cast<int>(rng.below(40));
    for (int k = 0; k < n; ++k) vals.push_back(static_cast<int64_t>(rng.below(60)));
    const std::string name = "d" + std::to_string(i);
    int_dataset(lake, name, "v", vals, 16);
    names.push_back(name);
  }

  PipelineParams params;
  params.clp.seed = 404;
  PipelineState state = state_of(run_pipeline(lake, params));

  int next_id = 10;
  for (int step = 0; step < 15; ++step) {
    const uint64_t dice = rng.below(3);
    if (dice == 0) {
      const std::string name = "d" + std::to_string(next_id++);
      std::vector<int64_t> vals;
      const int n = 3 + static_cast<int>(rng.below(30));
      for (int k = 0; k < n; ++k) vals.push_back(static_cast<int64_t>(rng.below(60)));
      int_dataset(lake, name, "v", vals, 16);
      add_dataset(state, lake, name, params);
      names.push_back(name);
    } else if (dice == 1 && names.size() > 3) {
      const size_t pick = rng.below(names.size());
      remove_dataset(state, names[pick]);
      lake.drop_dataset(names[pick]);
      names.erase(names.begin() + static_cast<ptrdiff_t>(pick));
    } else {
      const std::string& name = names[rng.below(names.size())];
      std::vector<Row> rows = lake.scan(lake.dataset(name), {"v"});
      const bool grow = rng.below(2) == 0;
      if (grow) {
        const int extra = 1 + static_cast<int>(rng.below(10));
        for (int k = 0; k < extra; ++k) {
          rows.push_back({I(static_cast<int64_t>(rng.below(60)))});
        }
      } else if (rows.size() > 1) {
        rows.resize(rows.size() / 2 + 1);
      }
      lake.replace_dataset(name, {{"v", ValueType::Integer}}, rows, 16);
      mutate_dataset(state, lake, name,
                     grow ? MutationKind::RowsAdded : MutationKind::RowsRemoved, params);
    }
    check_matches_rerun(lake, state, params);
  }
}

}  // TEST_SUITE
