#include "lakeprune/content_prune.hpp"

#include <algorithm>

#include "doctest.h"
#include "lakeprune/errors.hpp"
#include "test_util.hpp"

using namespace lakeprune;
using namespace testutil;

namespace {

GraphEdge edge(const std::string& parent, const std::string& child,
               std::vector<std::string> common) {
  GraphEdge e;
  e.parent = parent;
  e.child = child;
  e.stage = Stage::MinMax;
  e.common_columns = std::move(common);
  return e;
}

}  // namespace

TEST_SUITE("content") {

TEST_CASE("required sample size for an error budget") {
  CHECK(required_samples(0.1, 0.05) == 29);
  CHECK(required_samples(0.5, 0.5) == 1);
  CHECK(required_samples(0.5, 0.05) == 5);
  CHECK(required_samples(0.01, 0.01) == 459);
  CHECK_THROWS_AS(required_samples(0.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(required_samples(1.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(required_samples(0.5, 0.0), InvalidArgument);
  CHECK_THROWS_AS(required_samples(0.5, 1.0), InvalidArgument);
}

TEST_CASE("search columns prefer the largest metadata pools") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  std::vector<ColumnDef> cols{{"hi", ValueType::Integer},
                              {"lo", ValueType::Text},
                              {"mid", ValueType::Integer},
                              {"none", ValueType::Float}};
  std::vector<Row> rows;
  for (int64_t i = 0; i < 12; ++i) {
    rows.push_back({I(i), S(i % 2 ? "odd" : "even"), I(i % 5), N()});
  }
  const DatasetHandle& h = lake.create_dataset("d", cols, rows);

  const std::vector<std::string> all{"hi", "lo", "mid", "none"};
  CHECK(choose_search_columns(h, all, 4) == std::vector<std::string>{"hi", "mid", "lo"});
  CHECK(choose_search_columns(h, all, 2) == std::vector<std::string>{"hi", "mid"});
  CHECK(choose_search_columns(h, {"none"}, 4).empty());
}

TEST_CASE("sampling respects the cap and the sample comes from the data") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  std::vector<int64_t> values;
  for (int64_t i = 0; i < 100; ++i) values.push_back(i);
  const DatasetHandle& h = int_dataset(lake, "d", "v", values, 25);

  Rng rng(1);
  std::vector<Row> sample = sample_child(lake, h, {"v"}, {}, 10, rng);
  CHECK(sample.size() == 10);
  for (const Row& row : sample) {
    CHECK(row.size() == 1);
    CHECK(row[0].as_integer() >= 0);
    CHECK(row[0].as_integer() < 100);
  }

  Rng rng2(1);
  std::vector<Row> everything = sample_child(lake, h, {"v"}, {}, 1000, rng2);
  CHECK(everything.size() == 100);

  Rng rng3(1);
  CHECK_THROWS_AS(sample_child(lake, h, {"v"}, {}, 0, rng3), InvalidArgument);
  Rng rng4(1);
  CHECK_THROWS_AS(sample_child(lake, h, {"v"}, {"missing"}, 5, rng4), NotFound);
}

TEST_CASE("filtered sampling reads only partitions that can match") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  std::vector<int64_t> values;
  for (int64_t i = 0; i < 40; ++i) values.push_back(i);  // sorted: disjoint partition ranges
  const DatasetHandle& h = int_dataset(lake, "d", "v", values, 10);
  REQUIRE(h.partitions.size() == 4);

  for (uint64_t seed = 0; seed < 6; ++seed) {
    Rng rng(seed);
    const uint64_t before = lake.rows_scanned();
    std::vector<Row> sample = sample_child(lake, h, {"v"}, {"v"}, 5, rng);
    // One equality value falls in exactly one of the disjoint ranges.
    CHECK(lake.rows_scanned() - before == 10);
    CHECK_FALSE(sample.empty());
    for (const Row& row : sample) CHECK(row.size() == 1);
  }
}

TEST_CASE("same seed, same sample; different seed may differ") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  std::vector<int64_t> values;
  for (int64_t i = 0; i < 200; ++i) values.push_back(i % 37);
  const DatasetHandle& h = int_dataset(lake, "d", "v", values, 50);

  Rng a(42), b(42), c(43);
  auto sa = sample_child(lake, h, {"v"}, {"v"}, 8, a);
  auto sb = sample_child(lake, h, {"v"}, {"v"}, 8, b);
  auto sc = sample_child(lake, h, {"v"}, {"v"}, 8, c);
  CHECK(sa == sb);
  CHECK((sa != sc || true));  // different seed need not differ, but must not crash
}

TEST_CASE("true containment always survives the content check") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  Rng rng(777);
  std::vector<ColumnDef> cols{
      {"a", ValueType::Integer}, {"b", ValueType::Text}, {"c", ValueType::Float}};
  int id = 0;
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Row> parent_rows;
    const int n = 30 + static_cast<int>(rng.below(100));
    for (int i = 0; i < n; ++i) {
      parent_rows.push_back({rng.next_double() < 0.1 ? N() : I(rng.int_in(0, 40)),
                             S("w" + std::to_string(rng.below(12))),
                             rng.next_double() < 0.1 ? N() : F(rng.real_in(-3, 3))});
    }
    std::vector<Row> child_rows;
    for (const Row& row : parent_rows) {
      if (rng.next_double() < 0.5) child_rows.push_back(row);
    }
    const std::string p = "p" + std::to_string(id);
    const std::string c = "c" + std::to_string(id);
    ++id;
    lake.create_dataset(p, cols, parent_rows, 16);
    lake.create_dataset(c, cols, child_rows, 16);

    ClpParams params;
    params.seed = rng.next_u64();
    params.max_filter_columns = 1 + static_cast<uint32_t>(rng.below(4));
    params.max_sample_rows = 1 + static_cast<uint32_t>(rng.below(30));
    params.mode = rng.below(2) ? ClpMode::BothSides : ClpMode::ChildOnly;
    params.sampling = rng.below(2) ? ClpSampling::Uniform : ClpSampling::Filtered;
    OpCounters counters;
    CHECK(content_edge_survives(lake, edge(p, c, {"a", "b", "c"}), params, counters));
  }
}

TEST_CASE("a full uniform sample always exposes a fabricated row") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  std::vector<int64_t> parent_values;
  for (int64_t i = 0; i < 50; ++i) parent_values.push_back(i);
  std::vector<int64_t> child_values = parent_values;
  child_values.push_back(25);  // duplicate, fine
  child_values[10] = 49;       // still present in parent
  std::vector<int64_t> bad_values = child_values;
  bad_values[20] = 200;  // not in the parent

  int_dataset(lake, "parent", "v", parent_values, 20);
  int_dataset(lake, "good", "v", child_values, 20);
  int_dataset(lake, "bad", "v", bad_values, 20);

  ClpParams params;
  params.sampling = ClpSampling::Uniform;
  params.max_sample_rows = 1000;  // reservoir keeps every row
  for (uint64_t seed = 0; seed < 5; ++seed) {
    params.seed = seed;
    OpCounters counters;
    CHECK(content_edge_survives(lake, edge("parent", "good", {"v"}), params, counters));
    CHECK_FALSE(content_edge_survives(lake, edge("parent", "bad", {"v"}), params, counters));
    CHECK(counters.row_membership_ops > 0);
  }
}

TEST_CASE("an empty child keeps its edges") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  int_dataset(lake, "parent", "v", {1, 2, 3});
  lake.create_dataset("empty", {{"v", ValueType::Integer}}, {});
  ClpParams params;
  OpCounters counters;
  CHECK(content_edge_survives(lake, edge("parent", "empty", {"v"}), params, counters));
  CHECK(counters.nominal_row_ops == 0);  // nothing was compared
}

TEST_CASE("nominal work is the parent's size times the sample budget") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  std::vector<int64_t> values;
  for (int64_t i = 0; i < 64; ++i) values.push_back(i);
  int_dataset(lake, "parent", "v", values, 16);
  int_dataset(lake, "child", "v", {1, 2, 3, 4}, 16);

  ClpParams params;
  params.max_sample_rows = 7;
  OpCounters counters;
  CHECK(content_edge_survives(lake, edge("parent", "child", {"v"}), params, counters));
  CHECK(counters.nominal_row_ops == 64 * 7);
}

TEST_CASE("pruning a graph is deterministic across thread counts") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  Rng rng(31);
  std::vector<std::string> names;
  std::vector<int64_t> base;
  for (int64_t i = 0; i < 200; ++i) base.push_back(i);
  int_dataset(lake, "root", "v", base, 32);
  names.push_back("root");
  for (int k = 0; k < 12; ++k) {
    std::vector<int64_t> vals;
    for (int64_t v : base) {
      if (rng.next_double() < 0.5) vals.push_back(v);
    }
    if (rng.next_double() < 0.4) vals.push_back(300 + k);  // escapes the parent
    const std::string name = "d" + std::to_string(k);
    int_dataset(lake, name, "v", vals, 32);
    names.push_back(name);
  }

  ContainmentGraph g;
  g.stage_label = Stage::MinMax;
  for (const auto& n : names) g.nodes.insert(n);
  for (const auto& a : names) {
    for (const auto& b : names) {
      if (a != b) {
        GraphEdge e = edge(a, b, {"v"});
        e.stage = Stage::MinMax;
        g.add_edge(std::move(e));
      }
    }
  }

  ClpParams params;
  params.seed = 99;
  OpCounters c1, c4;
  ContainmentGraph r1 = content_prune(g, lake, params, c1, 1);
  ContainmentGraph r4 = content_prune(g, lake, params, c4, 4);
  CHECK(r1.serialize() == r4.serialize());
  CHECK(c1.rows_scanned == c4.rows_scanned);
  CHECK(c1.row_membership_ops == c4.row_membership_ops);

  ContainmentGraph wrong = r1;  // stage is now Content
  CHECK_THROWS_AS(content_prune(wrong, lake, params, c1, 1), InvalidArgument);
}

}  // TEST_SUITE
