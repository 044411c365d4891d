#include "lakeprune/content_prune.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <set>
#include <thread>
#include <unordered_set>

#include "lakeprune/errors.hpp"

namespace lakeprune {

uint64_t required_samples(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidArgument("epsilon must lie in (0, 1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidArgument("delta must lie in (0, 1)");
  }
  const double n = std::log(1.0 / delta) / std::log(1.0 / (1.0 - epsilon));
  return static_cast<uint64_t>(std::ceil(n));
}

namespace {

struct ColumnFilter {
  std::string column;
  Value value;
};

// Union of the per-partition metadata samples; the pool candidate filter
// values are drawn from.
std::vector<std::string> value_pool(const DatasetHandle& d, const std::string& column) {
  std::set<std::string> pool;
  for (const Partition& p : d.partitions) {
    auto it = p.stats.find(column);
    if (it == p.stats.end()) continue;
    pool.insert(it->second.distinct_sample.begin(), it->second.distinct_sample.end());
  }
  return {pool.begin(), pool.end()};
}

std::vector<ColumnFilter> choose_filters(const DatasetHandle& child,
                                         const std::vector<std::string>& search_cols, Rng& rng) {
  std::vector<ColumnFilter> filters;
  for (const std::string& col : search_cols) {
    std::vector<std::string> pool = value_pool(child, col);
    if (pool.empty()) continue;
    const std::string& rendered = pool[rng.below(pool.size())];
    filters.push_back({col, Value::parse(rendered, child.find_column(col)->type)});
  }
  return filters;
}

bool partition_admits_value(const std::map<std::string, ColumnStats>& stats,
                            const std::string& column, const Value& v) {
  auto it = stats.find(column);
  if (it == stats.end() || !it->second.min) return false;
  return compare_values(v, *it->second.min) >= 0 && compare_values(v, *it->second.max) <= 0;
}

void reservoir_push(std::vector<Row>& sample, Row row, uint64_t index, uint32_t t, Rng& rng) {
  if (index < t) {
    sample.push_back(std::move(row));
    return;
  }
  const uint64_t j = rng.below(index + 1);
  if (j < t) sample[j] = std::move(row);
}

std::vector<Row> sample_with_filters(const Lake& lake, const DatasetHandle& child,
                                     const std::vector<std::string>& project_cols,
                                     const std::vector<ColumnFilter>& filters, uint32_t t,
                                     Rng& rng) {
  if (t == 0) throw InvalidArgument("sample size t must be positive");

  if (filters.empty()) {
    // Uniform reservoir over a full scan.
    std::vector<Row> rows = lake.scan(child, project_cols);
    std::vector<Row> sample;
    sample.reserve(std::min<size_t>(t, rows.size()));
    for (size_t i = 0; i < rows.size(); ++i) {
      reservoir_push(sample, std::move(rows[i]), i, t, rng);
    }
    return sample;
  }

  // Scan only partitions whose ranges admit at least one filter value, and
  // project the filter columns alongside so matches can be tested per row.
  std::vector<std::string> scan_cols = project_cols;
  std::vector<size_t> filter_pos;
  for (const ColumnFilter& f : filters) {
    auto it = std::find(scan_cols.begin(), scan_cols.end(), f.column);
    if (it == scan_cols.end()) {
      filter_pos.push_back(scan_cols.size());
      scan_cols.push_back(f.column);
    } else {
      filter_pos.push_back(static_cast<size_t>(it - scan_cols.begin()));
    }
  }

  StatsPredicate qualifies = [&](const std::map<std::string, ColumnStats>& stats) {
    for (const ColumnFilter& f : filters) {
      if (partition_admits_value(stats, f.column, f.value)) return true;
    }
    return false;
  };

  std::vector<Row> rows = lake.scan(child, scan_cols, qualifies);
  std::vector<Row> sample;
  uint64_t matched = 0;
  for (Row& row : rows) {
    bool match = false;
    for (size_t i = 0; i < filters.size() && !match; ++i) {
      match = row[filter_pos[i]] == filters[i].value;
    }
    if (!match) continue;
    row.resize(project_cols.size());  // strip filter-only columns
    reservoir_push(sample, std::move(row), matched, t, rng);
    ++matched;
  }
  return sample;
}

}  // namespace

std::vector<std::string> choose_search_columns(const DatasetHandle& child,
                                               const std::vector<std::string>& common_cols,
                                               uint32_t max_columns) {
  std::vector<std::pair<size_t, std::string>> ranked;
  for (const std::string& col : common_cols) {
    size_t pool = value_pool(child, col).size();
    if (pool > 0) ranked.emplace_back(pool, col);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<std::string> out;
  for (const auto& [pool, col] : ranked) {
    if (out.size() >= max_columns) break;
    out.push_back(col);
  }
  return out;
}

std::vector<Row> sample_child(const Lake& lake, const DatasetHandle& child,
                              const std::vector<std::string>& project_cols,
                              const std::vector<std::string>& search_cols, uint32_t t, Rng& rng) {
  for (const std::string& col : search_cols) child.column_index(col);
  return sample_with_filters(lake, child, project_cols, choose_filters(child, search_cols, rng), t,
                             rng);
}

bool content_edge_survives(const Lake& lake, const GraphEdge& edge, const ClpParams& params,
                           OpCounters& counters) {
  if (params.max_filter_columns == 0) {
    throw InvalidArgument("at least one search column is required");
  }
  const DatasetHandle& parent = lake.dataset(edge.parent);
  const DatasetHandle& child = lake.dataset(edge.child);
  const std::vector<std::string>& common = edge.common_columns;

  Rng rng(mix_seed(params.seed, edge.parent, edge.child));

  std::vector<ColumnFilter> filters;
  if (params.sampling == ClpSampling::Filtered) {
    filters = choose_filters(child, choose_search_columns(child, common, params.max_filter_columns),
                             rng);
  }
  const std::vector<Row> sample =
      sample_with_filters(lake, child, common, filters, params.max_sample_rows, rng);
  if (sample.empty()) return true;  // nothing to disprove containment with

  counters.nominal_row_ops += parent.total_rows * params.max_sample_rows;

  // Column-by-column comparability between the sampled child values and the
  // parent's statistics, for partition pruning on the membership side.
  std::vector<ValueType> parent_types(common.size());
  std::vector<bool> range_checkable(common.size());
  for (size_t k = 0; k < common.size(); ++k) {
    const ColumnDef* pc = parent.find_column(common[k]);
    const ColumnDef* cc = child.find_column(common[k]);
    parent_types[k] = pc->type;
    range_checkable[k] = pc->type == cc->type && is_ordered_type(pc->type);
  }

  auto row_fits = [&](const Row& row, const std::map<std::string, ColumnStats>& stats) {
    for (size_t k = 0; k < common.size(); ++k) {
      const Value& v = row[k];
      auto it = stats.find(common[k]);
      if (v.is_null()) {
        if (it == stats.end() || it->second.null_count == 0) return false;
        continue;
      }
      if (!range_checkable[k]) continue;
      if (it == stats.end() || !it->second.min) return false;
      if (compare_values(v, *it->second.min) < 0 || compare_values(v, *it->second.max) > 0) {
        return false;
      }
    }
    return true;
  };
  StatsPredicate qualifies = [&](const std::map<std::string, ColumnStats>& stats) {
    for (const Row& row : sample) {
      if (row_fits(row, stats)) return true;
    }
    return false;
  };

  std::vector<size_t> filter_pos;
  if (params.mode == ClpMode::BothSides) {
    for (const ColumnFilter& f : filters) {
      filter_pos.push_back(
          static_cast<size_t>(std::find(common.begin(), common.end(), f.column) - common.begin()));
    }
  }

  std::unordered_set<std::string> membership;
  {
    std::vector<Row> parent_rows = lake.scan(parent, common, qualifies);
    membership.reserve(parent_rows.size() * 2);
    for (const Row& row : parent_rows) {
      if (params.mode == ClpMode::BothSides && !filters.empty()) {
        bool match = false;
        for (size_t i = 0; i < filters.size() && !match; ++i) {
          match = row[filter_pos[i]] == filters[i].value;
        }
        if (!match) continue;
      }
      membership.insert(encode_row(row));
    }
  }

  for (const Row& row : sample) {
    ++counters.row_membership_ops;
    if (membership.count(encode_row(row)) == 0) return false;
  }
  return true;
}

ContainmentGraph content_prune(const ContainmentGraph& graph, Lake& lake, const ClpParams& params,
                               OpCounters& counters, int threads) {
  if (graph.stage_label != Stage::MinMax) {
    throw InvalidArgument("content pruning expects a min/max-stage graph, got stage " +
                          std::string(stage_name(graph.stage_label)));
  }
  std::vector<const GraphEdge*> edges;
  edges.reserve(graph.edges.size());
  for (const auto& [key, edge] : graph.edges) edges.push_back(&edge);

  std::vector<char> survives(edges.size(), 0);
  std::vector<OpCounters> local(edges.size());

  auto work = [&](size_t i) { survives[i] = content_edge_survives(lake, *edges[i], params, local[i]); };

  const int nthreads = std::max(1, threads);
  if (nthreads == 1 || edges.size() <= 1) {
    for (size_t i = 0; i < edges.size(); ++i) work(i);
  } else {
    std::atomic<size_t> next{0};
    auto runner = [&]() {
      for (size_t i = next.fetch_add(1); i < edges.size(); i = next.fetch_add(1)) work(i);
    };
    std::vector<std::thread> pool;
    const int spawn = std::min<int>(nthreads, static_cast<int>(edges.size()));
    pool.reserve(static_cast<size_t>(spawn));
    for (int i = 0; i < spawn; ++i) pool.emplace_back(runner);
    for (std::thread& th : pool) th.join();
  }

  ContainmentGraph out;
  out.stage_label = Stage::Content;
  out.nodes = graph.nodes;
  for (size_t i = 0; i < edges.size(); ++i) {
    counters += local[i];
    if (survives[i]) {
      GraphEdge kept = *edges[i];
      kept.stage = Stage::Content;
      out.add_edge(std::move(kept));
    }
  }
  counters.edges_content += out.edge_count();
  return out;
}

}  // namespace lakeprune
