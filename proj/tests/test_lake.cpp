#include "lakeprune/lake.hpp"

#include <fstream>
#include <set>

#include "doctest.h"
#include "lakeprune/errors.hpp"
#include "lakeprune/rng.hpp"
#include "test_util.hpp"

using namespace lakeprune;
using namespace testutil;

namespace {

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

TEST_SUITE("lake") {

TEST_CASE("rows split into fixed-size partitions with per-partition stats") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  const DatasetHandle& h =
      int_dataset(lake, "d", "v", {5, 7, 3, 9, 4, 8, 2}, /*partition_rows=*/3);

  REQUIRE(h.partitions.size() == 3);
  CHECK(h.partitions[0].row_count == 3);
  CHECK(h.partitions[1].row_count == 3);
  CHECK(h.partitions[2].row_count == 1);
  CHECK(h.total_rows == 7);

  const ColumnStats& s0 = h.partitions[0].stats.at("v");
  CHECK(s0.min.value() == I(3));
  CHECK(s0.max.value() == I(7));
  CHECK(s0.null_count == 0);
  CHECK(s0.distinct_sample == std::vector<std::string>{"3", "5", "7"});

  auto [mn, mx] = lake.dataset_min_max(h, "v");
  CHECK(mn.value() == I(2));
  CHECK(mx.value() == I(9));
}

TEST_CASE("all-null column has no range but counts its nulls") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  std::vector<Row> rows{{I(1), N()}, {I(2), N()}};
  const DatasetHandle& h = lake.create_dataset(
      "d", {{"k", ValueType::Integer}, {"gap", ValueType::Float}}, rows);
  const ColumnStats& s = h.partitions[0].stats.at("gap");
  CHECK_FALSE(s.min.has_value());
  CHECK_FALSE(s.max.has_value());
  CHECK(s.null_count == 2);
  auto [mn, mx] = lake.dataset_min_max(h, "gap");
  CHECK_FALSE(mn.has_value());
  CHECK_FALSE(mx.has_value());
}

TEST_CASE("distinct sample caps at sixteen values") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  std::vector<int64_t> values;
  for (int64_t i = 0; i < 40; ++i) values.push_back(i);
  const DatasetHandle& h = int_dataset(lake, "d", "v", values, 64);
  CHECK(h.partitions[0].stats.at("v").distinct_sample.size() == ColumnStats::kDistinctSampleCap);
}

TEST_CASE("csv ingest infers types and honors quoting") {
  TempDir tmp;
  write_file(tmp / "in.csv",
             "id,score,label,seen,note\n"
             "1,2.5,alpha,2020-01-01T00:00:00Z,\"a,b\"\n"
             "2,3,beta,2021-06-01 12:00:00,\"line\nbreak\"\n"
             "3,\\N,gamma,2022-01-01T00:00:00Z,\"she said \"\"hi\"\"\"\n");
  Lake lake(tmp / "lake");
  const DatasetHandle& h = lake.ingest(tmp / "in.csv", "d");

  REQUIRE(h.columns.size() == 5);
  CHECK(h.columns[0].type == ValueType::Integer);
  CHECK(h.columns[1].type == ValueType::Float);  // "3" alone would be integer; "2.5" widens
  CHECK(h.columns[2].type == ValueType::Text);
  CHECK(h.columns[3].type == ValueType::Timestamp);
  CHECK(h.columns[4].type == ValueType::Text);
  CHECK(h.total_rows == 3);

  std::vector<Row> rows = lake.scan(h, {});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][4] == S("a,b"));
  CHECK(rows[1][4] == S("line\nbreak"));
  CHECK(rows[2][4] == S("she said \"hi\""));
  CHECK(rows[2][1].is_null());  // unquoted \N
}

TEST_CASE("literal backslash-N text cannot be stored") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  // Quoting makes it a real two-character string, which the payload format
  // reserves for null; the loader reports it rather than silently mangling.
  write_file(tmp / "in.csv", "a\n\"\\N\"\n");
  CHECK_THROWS_AS(lake.ingest(tmp / "in.csv", "d"), InvalidArgument);
}

TEST_CASE("ingesting a directory requires a shared header") {
  TempDir tmp;
  std::filesystem::create_directories(tmp / "parts");
  write_file(tmp / "parts" / "a.csv", "x,y\n1,2\n");
  write_file(tmp / "parts" / "b.csv", "x,y\n3,4\n");
  Lake lake(tmp / "lake");
  const DatasetHandle& h = lake.ingest(tmp / "parts", "d");
  CHECK(h.total_rows == 2);

  write_file(tmp / "parts" / "c.csv", "x,z\n5,6\n");
  CHECK_THROWS_AS(lake.ingest(tmp / "parts", "d2"), SchemaError);
}

TEST_CASE("malformed sources are rejected with location info") {
  TempDir tmp;
  Lake lake(tmp / "lake");

  write_file(tmp / "ragged.csv", "a,b\n1,2\n3\n");
  try {
    lake.ingest(tmp / "ragged.csv", "r");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("ragged.csv") != std::string::npos);
    CHECK(msg.find("3") != std::string::npos);  // offending line
  }

  write_file(tmp / "empty.csv", "");
  CHECK_THROWS_AS(lake.ingest(tmp / "empty.csv", "e"), ParseError);

  // A header with no rows is a valid, empty dataset.
  write_file(tmp / "header_only.csv", "a,b\n");
  const DatasetHandle& h = lake.ingest(tmp / "header_only.csv", "ok");
  CHECK(h.total_rows == 0);
  CHECK(h.columns.size() == 2);
  CHECK(h.partitions.empty());
  CHECK(lake.scan(h, {}).empty());
}

TEST_CASE("names, arity, and cell types are validated at write time") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  int_dataset(lake, "d", "v", {1});
  CHECK_THROWS_AS(int_dataset(lake, "d", "v", {2}), Conflict);
  CHECK_THROWS_AS(int_dataset(lake, "a/b", "v", {1}), InvalidArgument);
  CHECK_THROWS_AS(int_dataset(lake, "..", "v", {1}), InvalidArgument);

  std::vector<ColumnDef> cols{{"v", ValueType::Integer}};
  CHECK_THROWS_AS(lake.create_dataset("bad_arity", cols, {{I(1), I(2)}}), SchemaError);
  CHECK_THROWS_AS(lake.create_dataset("bad_type", cols, {{F(1.0)}}), TypeMismatch);
  CHECK_THROWS_AS(
      lake.create_dataset("bad_null", {{"t", ValueType::Text}}, {{S("\\N")}}),
      InvalidArgument);
  CHECK_THROWS_AS(lake.create_dataset("no_cols", {}, {}), SchemaError);
  CHECK_THROWS_AS(
      lake.create_dataset("dup_cols", {{"v", ValueType::Integer}, {"v", ValueType::Integer}}, {}),
      SchemaError);

  const DatasetHandle& r = lake.replace_dataset("d", cols, {{I(10)}, {I(11)}});
  CHECK(r.total_rows == 2);
  lake.drop_dataset("d");
  CHECK_FALSE(lake.contains("d"));
  CHECK_THROWS_AS(lake.drop_dataset("d"), NotFound);
}

TEST_CASE("scan projects in request order and skips filtered partitions") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  std::vector<Row> rows;
  for (int64_t i = 0; i < 8; ++i) rows.push_back({I(i), S("r" + std::to_string(i))});
  const DatasetHandle& h = lake.create_dataset(
      "d", {{"k", ValueType::Integer}, {"s", ValueType::Text}}, rows, /*partition_rows=*/4);
  REQUIRE(h.partitions.size() == 2);

  const uint64_t before = lake.rows_scanned();
  // Admit only partitions whose k-range reaches 6: the second one.
  std::vector<Row> got = lake.scan(h, {"s", "k"}, [](const auto& stats) {
    return compare_values(stats.at("k").max.value(), Value::integer(6)) >= 0;
  });
  CHECK(lake.rows_scanned() - before == 4);
  REQUIRE(got.size() == 4);
  CHECK(got[0][0] == S("r4"));  // projection order honored
  CHECK(got[0][1] == I(4));
}

TEST_CASE("reopening a lake restores datasets byte for byte") {
  TempDir tmp;
  std::vector<Row> rows{{I(1), S("x"), TS(1'577'836'800'000'000)},
                        {I(2), N(), TS(1'600'000'000'000'000)}};
  std::vector<ColumnDef> cols{
      {"k", ValueType::Integer}, {"s", ValueType::Text}, {"when", ValueType::Timestamp}};
  {
    Lake lake(tmp / "lake");
    lake.create_dataset("d", cols, rows, 1);
  }
  Lake reopened(tmp / "lake");
  REQUIRE(reopened.contains("d"));
  const DatasetHandle& h = reopened.dataset("d");
  CHECK(h.columns.size() == 3);
  CHECK(h.partitions.size() == 2);
  std::vector<Row> got = reopened.scan(h, {});
  REQUIRE(got.size() == 2);
  CHECK(got[0] == rows[0]);
  CHECK(got[1] == rows[1]);
}

TEST_CASE("stats agree with a full recomputation on random data") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  Rng rng(99);
  std::vector<Row> rows;
  for (int i = 0; i < 300; ++i) {
    Row row;
    row.push_back(rng.next_double() < 0.1 ? N() : I(rng.int_in(-50, 50)));
    row.push_back(rng.next_double() < 0.1 ? N() : F(rng.real_in(-2.0, 2.0)));
    rows.push_back(std::move(row));
  }
  const DatasetHandle& h = lake.create_dataset(
      "d", {{"a", ValueType::Integer}, {"b", ValueType::Float}}, rows, 64);

  std::vector<Row> all = lake.scan(h, {});
  REQUIRE(all.size() == rows.size());
  for (const std::string col : {"a", "b"}) {
    const size_t idx = h.column_index(col);
    std::optional<Value> mn, mx;
    uint64_t nulls = 0;
    for (const Row& row : all) {
      const Value& v = row[idx];
      if (v.is_null()) {
        ++nulls;
        continue;
      }
      if (!mn || compare_values(v, *mn) < 0) mn = v;
      if (!mx || compare_values(v, *mx) > 0) mx = v;
    }
    auto [smn, smx] = lake.dataset_min_max(h, col);
    CHECK(smn == mn);
    CHECK(smx == mx);
    uint64_t stat_nulls = 0;
    for (const Partition& p : h.partitions) stat_nulls += p.stats.at(col).null_count;
    CHECK(stat_nulls == nulls);

    // Every partition's distinct sample holds renderings of real values.
    std::set<std::string> seen;
    for (const Row& row : all) {
      if (!row[idx].is_null()) seen.insert(row[idx].render());
    }
    for (const Partition& p : h.partitions) {
      for (const std::string& s : p.stats.at(col).distinct_sample) {
        CHECK(seen.count(s) == 1);
      }
    }
  }
}

TEST_CASE("typed round trip through storage preserves every value") {
  TempDir tmp;
  Lake lake(tmp / "lake");
  Rng rng(123);
  std::vector<ColumnDef> cols{{"i", ValueType::Integer},
                              {"f", ValueType::Float},
                              {"t", ValueType::Text},
                              {"ts", ValueType::Timestamp}};
  std::vector<Row> rows;
  for (int r = 0; r < 200; ++r) {
    Row row;
    row.push_back(rng.next_double() < 0.15 ? N() : I(rng.int_in(-1000000, 1000000)));
    row.push_back(rng.next_double() < 0.15 ? N() : F(rng.real_in(-1e6, 1e6)));
    row.push_back(rng.next_double() < 0.15
                      ? N()
                      : S("s" + std::to_string(rng.below(1000))));
    row.push_back(rng.next_double() < 0.15
                      ? N()
                      : TS(rng.int_in(-60'000'000'000'000'000, 60'000'000'000'000'000)));
    rows.push_back(std::move(row));
  }
  const DatasetHandle& h = lake.create_dataset("d", cols, rows, 37);
  std::vector<Row> got = lake.scan(h, {});
  REQUIRE(got.size() == rows.size());
  for (size_t r = 0; r < rows.size(); ++r) CHECK(got[r] == rows[r]);
}

}  // TEST_SUITE
