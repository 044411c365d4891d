#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lakeprune/value.hpp"

namespace lakeprune {

struct ColumnDef {
  std::string path;  // flattened, dot-joined; nonempty, no whitespace
  ValueType type = ValueType::Text;
};

// Per-partition column statistics. min/max are over non-null values and are
// absent when a column holds no non-null value in the partition.
// distinct_sample holds up to kDistinctSampleCap observed distinct non-null
// values, canonically rendered and sorted.
struct ColumnStats {
  static constexpr size_t kDistinctSampleCap = 16;

  std::optional<Value> min;
  std::optional<Value> max;
  uint64_t null_count = 0;
  std::vector<std::string> distinct_sample;
};

struct Partition {
  uint32_t id = 0;
  uint64_t row_count = 0;
  std::string file;  // relative to the dataset directory
  std::map<std::string, ColumnStats> stats;
};

struct DatasetHandle {
  std::string name;
  std::vector<ColumnDef> columns;
  std::vector<Partition> partitions;
  uint64_t total_rows = 0;
  uint64_t total_bytes = 0;

  const ColumnDef* find_column(const std::string& path) const;
  size_t column_index(const std::string& path) const;  // throws NotFound
  std::vector<std::string> column_paths() const;
};

// Predicate over a partition's statistics; returning false skips the
// partition without reading any of its rows.
using StatsPredicate = std::function<bool(const std::map<std::string, ColumnStats>&)>;

// Directory-backed store of immutable, partitioned datasets. Each dataset
// directory holds a manifest.json plus length-prefixed binary row payloads.
// Writers must not run concurrently; readers may.
class Lake {
 public:
  explicit Lake(std::filesystem::path root);

  // Parses delimited text (a file, or a directory of files sharing one
  // header), infers column types, and materializes the dataset.
  DatasetHandle ingest(const std::filesystem::path& source, const std::string& name,
                       uint64_t partition_rows = kDefaultPartitionRows);

  // Materializes rows that are already typed. Cells must be Null or match
  // the declared column type.
  DatasetHandle create_dataset(const std::string& name, std::vector<ColumnDef> columns,
                               const std::vector<Row>& rows,
                               uint64_t partition_rows = kDefaultPartitionRows);

  // Same as create_dataset but replaces any existing dataset of that name.
  DatasetHandle replace_dataset(const std::string& name, std::vector<ColumnDef> columns,
                                const std::vector<Row>& rows,
                                uint64_t partition_rows = kDefaultPartitionRows);

  DatasetHandle replace_from_file(const std::filesystem::path& source, const std::string& name,
                                  uint64_t partition_rows = kDefaultPartitionRows);

  void drop_dataset(const std::string& name);

  bool contains(const std::string& name) const;
  const DatasetHandle& dataset(const std::string& name) const;  // throws NotFound
  std::vector<std::string> dataset_names() const;               // sorted
  size_t dataset_count() const { return datasets_.size(); }

  // Reads the dataset, projecting onto `columns` in the given order (empty
  // means all columns). Partitions failing `filter` are skipped unread; the
  // row-scan counter grows by the number of rows actually read.
  std::vector<Row> scan(const DatasetHandle& handle, const std::vector<std::string>& columns,
                        const StatsPredicate& filter = nullptr) const;

  // Dataset-level min/max folded from partition statistics; never reads rows.
  // Returns {nullopt, nullopt} when the column has no non-null values.
  std::pair<std::optional<Value>, std::optional<Value>> dataset_min_max(
      const DatasetHandle& handle, const std::string& column) const;

  uint64_t rows_scanned() const { return rows_scanned_.load(); }

  const std::filesystem::path& root() const { return root_; }

  static constexpr uint64_t kDefaultPartitionRows = 4096;

 private:
  DatasetHandle write_dataset(const std::string& name, std::vector<ColumnDef> columns,
                              const std::vector<Row>& rows, uint64_t partition_rows);
  void load_existing();

  std::filesystem::path root_;
  std::map<std::string, DatasetHandle> datasets_;
  mutable std::atomic<uint64_t> rows_scanned_{0};
};

}  // namespace lakeprune
