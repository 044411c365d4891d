#include "lakeprune/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lakeprune/errors.hpp"
#include "lakeprune/oracle.hpp"
#include "lakeprune/schema_graph.hpp"

using nlohmann::ordered_json;

namespace lakeprune {

void validate_gen_spec(const GenSpec& spec) {
  if (spec.roots < 1) throw InvalidArgument("need at least one root table");
  if (spec.tables < spec.roots) throw InvalidArgument("table target below the root count");
  if (spec.zipf_exponent < 0.0) throw InvalidArgument("zipf exponent must be nonnegative");
  if (spec.root_rows_min < 1 || spec.root_rows_max < spec.root_rows_min) {
    throw InvalidArgument("bad root row range");
  }
  if (spec.root_cols_min < 2 || spec.root_cols_max < spec.root_cols_min) {
    throw InvalidArgument("root tables need at least two columns");
  }
  const OpMix& m = spec.op_mix;
  const double parts[] = {m.filter_sample, m.add_rows, m.add_columns, m.add_noise, m.compose};
  double sum = 0.0;
  for (double p : parts) {
    if (p < 0.0) throw InvalidArgument("op mix entries must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("op mix must sum to 1");
}

GenSpec load_gen_spec(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open generator spec: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  ordered_json j;
  try {
    j = ordered_json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(file.string() + ": " + e.what());
  }

  GenSpec spec;
  try {
    if (j.contains("roots")) spec.roots = j["roots"].get<int>();
    if (j.contains("tables")) spec.tables = j["tables"].get<int>();
    if (j.contains("zipf_exponent")) spec.zipf_exponent = j["zipf_exponent"].get<double>();
    if (j.contains("root_rows")) {
      spec.root_rows_min = j["root_rows"].at(0).get<int>();
      spec.root_rows_max = j["root_rows"].at(1).get<int>();
    }
    if (j.contains("root_columns")) {
      spec.root_cols_min = j["root_columns"].at(0).get<int>();
      spec.root_cols_max = j["root_columns"].at(1).get<int>();
    }
    if (j.contains("seed")) spec.seed = j["seed"].get<uint64_t>();
    if (j.contains("op_mix")) {
      const auto& mj = j["op_mix"];
      spec.op_mix.filter_sample = mj.at("filter_sample").get<double>();
      spec.op_mix.add_rows = mj.at("add_rows").get<double>();
      spec.op_mix.add_columns = mj.at("add_columns").get<double>();
      spec.op_mix.add_noise = mj.at("add_noise").get<double>();
      spec.op_mix.compose = mj.at("compose").get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
  validate_gen_spec(spec);
  return spec;
}

size_t zipf_pick(size_t n, double exponent, Rng& rng) {
  if (n == 0) throw InvalidArgument("cannot pick from an empty population");
  std::vector<double> cum(n);
  double total = 0.0;
  for (size_t k = 0; k < n; ++k) {
    total += std::pow(static_cast<double>(k + 1), -exponent);
    cum[k] = total;
  }
  const double u = rng.next_double() * total;
  const auto it = std::upper_bound(cum.begin(), cum.end(), u);
  return std::min<size_t>(static_cast<size_t>(it - cum.begin()), n - 1);
}

namespace {

struct TableData {
  std::vector<ColumnDef> columns;
  std::vector<Row> rows;
};

std::string table_name(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "t%05d", index);
  return buf;
}

// Columns are namespaced per root family, so containment candidates only
// arise between tables of common ancestry.
std::string column_name(int family, int index) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "f%d_c%d", family, index);
  return buf;
}

TableData make_root(int family, const GenSpec& spec, Rng& rng) {
  TableData t;
  const int ncols = static_cast<int>(rng.int_in(spec.root_cols_min, spec.root_cols_max));
  const int nrows = static_cast<int>(rng.int_in(spec.root_rows_min, spec.root_rows_max));

  t.columns.push_back({column_name(family, 0), ValueType::Integer});  // unique key
  struct ColPlan {
    ValueType type;
    int64_t int_lo = 0, int_hi = 0;
    double real_lo = 0, real_hi = 0;
    int64_t ts_base = 0, ts_span = 0;
    int vocab = 0;
  };
  std::vector<ColPlan> plans(1);  // slot 0 unused
  for (int c = 1; c < ncols; ++c) {
    ColPlan plan;
    switch (rng.below(4)) {
      case 0: {
        plan.type = ValueType::Integer;
        plan.int_lo = rng.int_in(-1000, 1000);
        plan.int_hi = plan.int_lo + rng.int_in(50, 5000);
        break;
      }
      case 1: {
        plan.type = ValueType::Float;
        plan.real_lo = rng.real_in(-500.0, 500.0);
        plan.real_hi = plan.real_lo + rng.real_in(10.0, 2000.0);
        break;
      }
      case 2: {
        plan.type = ValueType::Timestamp;
        plan.ts_base = rng.int_in(1577836800, 1704067200) * 1'000'000;  // 2020..2024
        plan.ts_span = rng.int_in(1, 365) * 86'400'000'000;
        break;
      }
      default: {
        plan.type = ValueType::Text;
        plan.vocab = static_cast<int>(rng.int_in(8, 40));
        break;
      }
    }
    plans.push_back(plan);
    t.columns.push_back({column_name(family, c), plan.type});
  }

  t.rows.reserve(nrows);
  for (int r = 0; r < nrows; ++r) {
    Row row;
    row.push_back(Value::integer(r));
    for (int c = 1; c < ncols; ++c) {
      const ColPlan& plan = plans[c];
      if (rng.next_double() < 0.05) {
        row.push_back(Value::null());
        continue;
      }
      switch (plan.type) {
        case ValueType::Integer:
          row.push_back(Value::integer(rng.int_in(plan.int_lo, plan.int_hi)));
          break;
        case ValueType::Float:
          row.push_back(Value::floating(rng.real_in(plan.real_lo, plan.real_hi)));
          break;
        case ValueType::Timestamp:
          row.push_back(Value::timestamp(plan.ts_base + rng.int_in(0, plan.ts_span)));
          break;
        default: {
          char word[16];
          std::snprintf(word, sizeof(word), "w%03d", static_cast<int>(rng.below(plan.vocab)));
          row.push_back(Value::text(word));
          break;
        }
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

TableData apply_filter_sample(const TableData& parent, Rng& rng) {
  TableData child;
  child.columns = parent.columns;
  const size_t ncols = parent.columns.size();
  for (int attempt = 0; attempt < 4 && !parent.rows.empty(); ++attempt) {
    const size_t c = rng.below(ncols);
    std::vector<const Value*> present;
    for (const Row& row : parent.rows) {
      if (!row[c].is_null()) present.push_back(&row[c]);
    }
    if (present.empty()) continue;
    const Value pivot = *present[rng.below(present.size())];
    const int mode = static_cast<int>(rng.below(3));  // 0 eq, 1 <=, 2 >=
    child.rows.clear();
    for (const Row& row : parent.rows) {
      if (row[c].is_null()) continue;
      bool keep = false;
      if (mode == 0) {
        keep = row[c] == pivot;
      } else {
        const int cmp = compare_values(row[c], pivot);
        keep = mode == 1 ? cmp <= 0 : cmp >= 0;
      }
      if (keep) child.rows.push_back(row);
    }
    if (!child.rows.empty() && child.rows.size() < parent.rows.size()) return child;
  }
  // Degenerate column draw: fall back to a prefix, still a true subset.
  child.rows.assign(parent.rows.begin(),
                    parent.rows.begin() + static_cast<long>((parent.rows.size() + 1) / 2));
  return child;
}

TableData apply_add_rows(const TableData& parent, Rng& rng) {
  TableData child;
  child.columns = parent.columns;
  child.rows = parent.rows;
  if (parent.rows.empty()) return child;
  const size_t extra =
      std::max<size_t>(1, static_cast<size_t>(std::llround(
                              static_cast<double>(parent.rows.size()) * rng.real_in(0.25, 0.6))));
  for (size_t i = 0; i < extra; ++i) {
    Row row;
    row.reserve(parent.columns.size());
    // Cell-wise resampling keeps every column inside its existing value set,
    // so the fabricated rows are invisible to range statistics.
    for (size_t c = 0; c < parent.columns.size(); ++c) {
      row.push_back(parent.rows[rng.below(parent.rows.size())][c]);
    }
    child.rows.push_back(std::move(row));
  }
  return child;
}

TableData apply_add_columns(const TableData& parent, Rng& rng) {
  TableData child;
  child.columns = parent.columns;
  child.rows = parent.rows;

  std::string prefix = parent.columns.front().path;
  if (auto cut = prefix.find('_'); cut != std::string::npos) prefix.resize(cut);
  std::set<std::string> taken;
  for (const auto& col : parent.columns) taken.insert(col.path);
  std::string fresh;
  for (int i = 0;; ++i) {
    fresh = prefix + "_x" + std::to_string(i);
    if (!taken.count(fresh)) break;
  }
  child.columns.push_back({fresh, ValueType::Float});

  std::vector<size_t> numeric;
  for (size_t c = 0; c < parent.columns.size(); ++c) {
    if (parent.columns[c].type == ValueType::Integer || parent.columns[c].type == ValueType::Float) {
      numeric.push_back(c);
    }
  }
  std::vector<double> coef(numeric.size());
  for (double& x : coef) x = rng.real_in(0.5, 2.0);

  for (size_t r = 0; r < child.rows.size(); ++r) {
    double acc = 0.25 * static_cast<double>(r);
    bool any_null = false;
    for (size_t k = 0; k < numeric.size(); ++k) {
      const Value& v = child.rows[r][numeric[k]];
      if (v.is_null()) {
        any_null = true;
        break;
      }
      acc += coef[k] * (v.type() == ValueType::Integer ? static_cast<double>(v.as_integer())
                                                       : v.as_float());
    }
    child.rows[r].push_back(any_null ? Value::null() : Value::floating(acc));
  }
  return child;
}

TableData apply_add_noise(const TableData& parent, Rng& rng) {
  TableData child;
  child.columns = parent.columns;
  child.rows = parent.rows;
  if (child.rows.empty()) return child;

  std::vector<size_t> numeric, stamps, texts;
  for (size_t c = 0; c < child.columns.size(); ++c) {
    switch (child.columns[c].type) {
      case ValueType::Integer:
      case ValueType::Float: numeric.push_back(c); break;
      case ValueType::Timestamp: stamps.push_back(c); break;
      case ValueType::Text: texts.push_back(c); break;
      default: break;
    }
  }
  if (!numeric.empty()) {
    const size_t c = numeric[rng.below(numeric.size())];
    // Shift past the old maximum so the perturbation widens the range.
    if (child.columns[c].type == ValueType::Integer) {
      int64_t lo = 0, hi = 0;
      bool seen = false;
      for (const Row& row : child.rows) {
        if (row[c].is_null()) continue;
        const int64_t v = row[c].as_integer();
        lo = seen ? std::min(lo, v) : v;
        hi = seen ? std::max(hi, v) : v;
        seen = true;
      }
      const int64_t shift = (seen ? hi - lo : 0) + 17;
      for (Row& row : child.rows) {
        if (!row[c].is_null()) row[c] = Value::integer(row[c].as_integer() + shift);
      }
    } else {
      double lo = 0, hi = 0;
      bool seen = false;
      for (const Row& row : child.rows) {
        if (row[c].is_null()) continue;
        const double v = row[c].as_float();
        lo = seen ? std::min(lo, v) : v;
        hi = seen ? std::max(hi, v) : v;
        seen = true;
      }
      const double shift = (seen ? hi - lo : 0.0) + 13.5;
      for (Row& row : child.rows) {
        if (!row[c].is_null()) row[c] = Value::floating(row[c].as_float() + shift);
      }
    }
  } else if (!stamps.empty()) {
    const size_t c = stamps[rng.below(stamps.size())];
    for (Row& row : child.rows) {
      if (!row[c].is_null()) row[c] = Value::timestamp(row[c].as_timestamp() + 63'115'200'000'000);
    }
  } else if (!texts.empty()) {
    const size_t c = texts[rng.below(texts.size())];
    for (Row& row : child.rows) {
      if (!row[c].is_null()) row[c] = Value::text(row[c].as_text() + "~");
    }
  }
  return child;
}

double guarded_cm(const Lake& lake, const DatasetHandle& parent, const DatasetHandle& child) {
  SchemaSet p = flatten_schema(parent);
  SchemaSet c = flatten_schema(child);
  if (!schema_contained(c, p)) return -1.0;
  return containment_fraction(lake, parent, child);
}

}  // namespace

GenResult generate(Lake& lake, const GenSpec& spec) {
  validate_gen_spec(spec);
  if (lake.dataset_count() != 0) throw Conflict("generator requires an empty lake");

  Rng rng(spec.seed);
  GenResult result;
  std::vector<TableData> tables;

  for (int f = 0; f < spec.roots; ++f) {
    TableData root = make_root(f, spec, rng);
    const std::string name = table_name(static_cast<int>(tables.size()));
    lake.create_dataset(name, root.columns, root.rows);
    result.names.push_back(name);
    tables.push_back(std::move(root));
  }

  const char* const op_names[] = {"filter_sample", "add_rows", "add_columns", "add_noise"};
  auto apply_op = [&rng](int op, const TableData& t) {
    switch (op) {
      case 0: return apply_filter_sample(t, rng);
      case 1: return apply_add_rows(t, rng);
      case 2: return apply_add_columns(t, rng);
      default: return apply_add_noise(t, rng);
    }
  };

  while (static_cast<int>(tables.size()) < spec.tables) {
    const size_t parent_idx = zipf_pick(tables.size(), spec.zipf_exponent, rng);
    const TableData& parent = tables[parent_idx];

    LineageRecord record;
    record.parent = result.names[parent_idx];

    const double dice = rng.next_double();
    const OpMix& m = spec.op_mix;
    TableData child;
    if (dice < m.filter_sample) {
      child = apply_filter_sample(parent, rng);
      record.ops.push_back(op_names[0]);
    } else if (dice < m.filter_sample + m.add_rows) {
      child = apply_add_rows(parent, rng);
      record.ops.push_back(op_names[1]);
    } else if (dice < m.filter_sample + m.add_rows + m.add_columns) {
      child = apply_add_columns(parent, rng);
      record.ops.push_back(op_names[2]);
    } else if (dice < m.filter_sample + m.add_rows + m.add_columns + m.add_noise) {
      child = apply_add_noise(parent, rng);
      record.ops.push_back(op_names[3]);
    } else {
      const int steps = static_cast<int>(rng.int_in(2, 3));
      child = parent;
      for (int s = 0; s < steps; ++s) {
        const int op = static_cast<int>(rng.below(4));
        child = apply_op(op, child);
        record.ops.push_back(op_names[op]);
      }
    }

    const std::string name = table_name(static_cast<int>(tables.size()));
    record.child = name;
    const DatasetHandle& child_handle = lake.create_dataset(name, child.columns, child.rows);
    const DatasetHandle& parent_handle = lake.dataset(record.parent);
    record.cm_child_in_parent = guarded_cm(lake, parent_handle, child_handle);
    record.cm_parent_in_child = guarded_cm(lake, child_handle, parent_handle);

    result.names.push_back(name);
    result.lineage.push_back(std::move(record));
    tables.push_back(std::move(child));
  }
  return result;
}

void save_lineage(const std::filesystem::path& file, const std::vector<LineageRecord>& records) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write lineage file: " + file.string());
  std::vector<const LineageRecord*> ordered;
  ordered.reserve(records.size());
  for (const auto& r : records) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](const LineageRecord* a, const LineageRecord* b) { return a->child < b->child; });
  for (const LineageRecord* r : ordered) {
    ordered_json j;
    j["child"] = r->child;
    j["parent"] = r->parent;
    j["ops"] = r->ops;
    if (r->cm_child_in_parent >= 0) {
      j["cm_child_in_parent"] = r->cm_child_in_parent;
    } else {
      j["cm_child_in_parent"] = nullptr;
    }
    if (r->cm_parent_in_child >= 0) {
      j["cm_parent_in_child"] = r->cm_parent_in_child;
    } else {
      j["cm_parent_in_child"] = nullptr;
    }
    out << j.dump() << "\n";
  }
  if (!out) throw IoError("short write: " + file.string());
}

std::vector<LineageRecord> load_lineage(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open lineage file: " + file.string());
  std::vector<LineageRecord> records;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
      LineageRecord r;
      r.child = j.at("child").get<std::string>();
      r.parent = j.at("parent").get<std::string>();
      for (const auto& op : j.at("ops")) r.ops.push_back(op.get<std::string>());
      if (!j.at("cm_child_in_parent").is_null()) {
        r.cm_child_in_parent = j["cm_child_in_parent"].get<double>();
      }
      if (!j.at("cm_parent_in_child").is_null()) {
        r.cm_parent_in_child = j["cm_parent_in_child"].get<double>();
      }
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(file.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return records;
}

}  // namespace lakeprune
