#include "lakeprune/lake.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "lakeprune/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace lakeprune {

namespace {

constexpr std::string_view kManifestFile = "manifest.json";

std::string read_file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_file_bytes(const fs::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open file for writing: " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("short write: " + path.string());
}

void validate_dataset_name(const std::string& name) {
  if (name.empty()) throw InvalidArgument("dataset name must be nonempty");
  if (name == "." || name == "..") throw InvalidArgument("invalid dataset name: " + name);
  for (char c : name) {
    if (c == '/' || c == '\\' || static_cast<unsigned char>(c) < 0x20) {
      throw InvalidArgument("dataset name contains unsupported character: " + name);
    }
  }
}

void validate_columns(const std::vector<ColumnDef>& columns) {
  if (columns.empty()) throw SchemaError("dataset must declare at least one column");
  std::unordered_set<std::string> seen;
  for (const ColumnDef& c : columns) {
    if (c.path.empty()) throw SchemaError("column path must be nonempty");
    for (char ch : c.path) {
      if (std::isspace(static_cast<unsigned char>(ch))) {
        throw SchemaError("column path contains whitespace: '" + c.path + "'");
      }
    }
    if (c.type == ValueType::Null) throw SchemaError("column type cannot be null: " + c.path);
    if (!seen.insert(c.path).second) {
      throw SchemaError("duplicate column path: " + c.path);
    }
  }
}

void append_u32_le(std::string& out, uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
               static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.append(b, 4);
}

uint32_t read_u32_le(const std::string& data, size_t& pos, const std::string& origin) {
  if (pos + 4 > data.size()) throw ParseError("truncated payload: " + origin);
  uint32_t v = static_cast<uint8_t>(data[pos]) | (static_cast<uint8_t>(data[pos + 1]) << 8) |
               (static_cast<uint8_t>(data[pos + 2]) << 16) |
               (static_cast<uint8_t>(data[pos + 3]) << 24);
  pos += 4;
  return v;
}

std::string partition_file_name(uint32_t id) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "part-%05u.bin", id);
  return buf;
}

// --- delimited text -------------------------------------------------------

struct RawCell {
  std::string text;
  bool quoted = false;
};

struct RawRow {
  std::vector<RawCell> cells;
  uint64_t line = 0;  // 1-based line where the row starts
};

// Minimal RFC-4180 reader: quoted fields may contain commas, newlines, and
// doubled quotes. An unquoted \N cell is the null marker.
std::vector<RawRow> parse_delimited(const std::string& data, const std::string& origin) {
  std::vector<RawRow> rows;
  size_t pos = 0;
  uint64_t line = 1;
  const size_t n = data.size();

  while (pos < n) {
    RawRow row;
    row.line = line;
    bool row_done = false;
    while (!row_done) {
      RawCell cell;
      if (pos < n && data[pos] == '"') {
        cell.quoted = true;
        ++pos;
        bool closed = false;
        while (pos < n) {
          char c = data[pos];
          if (c == '"') {
            if (pos + 1 < n && data[pos + 1] == '"') {
              cell.text += '"';
              pos += 2;
            } else {
              ++pos;
              closed = true;
              break;
            }
          } else {
            if (c == '\n') ++line;
            cell.text += c;
            ++pos;
          }
        }
        if (!closed) {
          throw ParseError(origin + ": unterminated quoted field starting near line " +
                           std::to_string(row.line));
        }
        if (pos < n && data[pos] != ',' && data[pos] != '\n' && data[pos] != '\r') {
          throw ParseError(origin + ": unexpected character after closing quote at line " +
                           std::to_string(line));
        }
      } else {
        while (pos < n && data[pos] != ',' && data[pos] != '\n' && data[pos] != '\r') {
          cell.text += data[pos];
          ++pos;
        }
      }
      row.cells.push_back(std::move(cell));

      if (pos >= n) {
        row_done = true;
      } else if (data[pos] == ',') {
        ++pos;
      } else {
        if (data[pos] == '\r') {
          ++pos;
          if (pos < n && data[pos] == '\n') ++pos;
        } else {
          ++pos;  // '\n'
        }
        ++line;
        row_done = true;
      }
    }
    // A lone empty cell produced by a trailing newline is not a row.
    if (row.cells.size() == 1 && !row.cells[0].quoted && row.cells[0].text.empty() && pos >= n) {
      break;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool is_null_cell(const RawCell& cell) { return !cell.quoted && cell.text == kNullToken; }

// Narrowest type consistent with every non-null cell, in the precedence
// integer < float < timestamp < text.
std::vector<ValueType> infer_column_types(const std::vector<RawRow>& rows, size_t ncols) {
  std::vector<bool> can_int(ncols, true), can_float(ncols, true), can_ts(ncols, true);
  for (const RawRow& row : rows) {
    for (size_t i = 0; i < ncols; ++i) {
      const RawCell& cell = row.cells[i];
      if (is_null_cell(cell)) continue;
      if (can_int[i] && !try_parse_integer(cell.text)) can_int[i] = false;
      if (can_float[i] && !try_parse_float(cell.text)) can_float[i] = false;
      if (can_ts[i] && !try_parse_timestamp_micros(cell.text)) can_ts[i] = false;
    }
  }
  std::vector<ValueType> types(ncols);
  for (size_t i = 0; i < ncols; ++i) {
    types[i] = can_int[i]    ? ValueType::Integer
               : can_float[i] ? ValueType::Float
               : can_ts[i]    ? ValueType::Timestamp
                              : ValueType::Text;
  }
  return types;
}

// --- manifest serialization -----------------------------------------------

ordered_json stats_to_json(const ColumnStats& st) {
  ordered_json j;
  if (st.min) j["min"] = st.min->render();
  if (st.max) j["max"] = st.max->render();
  j["null_count"] = st.null_count;
  j["distinct_sample"] = st.distinct_sample;
  return j;
}

ColumnStats stats_from_json(const ordered_json& j, ValueType type, const std::string& origin) {
  ColumnStats st;
  if (j.contains("min")) st.min = Value::parse(j.at("min").get<std::string>(), type);
  if (j.contains("max")) st.max = Value::parse(j.at("max").get<std::string>(), type);
  st.null_count = j.at("null_count").get<uint64_t>();
  for (const auto& v : j.at("distinct_sample")) {
    st.distinct_sample.push_back(v.get<std::string>());
  }
  if (st.distinct_sample.size() > ColumnStats::kDistinctSampleCap) {
    throw ParseError(origin + ": distinct_sample exceeds cap");
  }
  return st;
}

ordered_json manifest_to_json(const DatasetHandle& h) {
  ordered_json j;
  j["name"] = h.name;
  ordered_json cols = ordered_json::array();
  for (const ColumnDef& c : h.columns) {
    cols.push_back({{"path", c.path}, {"type", std::string(value_type_name(c.type))}});
  }
  j["columns"] = std::move(cols);
  ordered_json parts = ordered_json::array();
  for (const Partition& p : h.partitions) {
    ordered_json pj;
    pj["id"] = p.id;
    pj["row_count"] = p.row_count;
    pj["file"] = p.file;
    ordered_json stats;
    for (const auto& [path, st] : p.stats) stats[path] = stats_to_json(st);
    pj["stats"] = std::move(stats);
    parts.push_back(std::move(pj));
  }
  j["partitions"] = std::move(parts);
  j["total_rows"] = h.total_rows;
  j["total_bytes"] = h.total_bytes;
  return j;
}

DatasetHandle manifest_from_json(const ordered_json& j, const std::string& origin) {
  DatasetHandle h;
  h.name = j.at("name").get<std::string>();
  for (const auto& cj : j.at("columns")) {
    h.columns.push_back(
        {cj.at("path").get<std::string>(), value_type_from_name(cj.at("type").get<std::string>())});
  }
  validate_columns(h.columns);
  std::map<std::string, ValueType> types;
  for (const ColumnDef& c : h.columns) types[c.path] = c.type;
  for (const auto& pj : j.at("partitions")) {
    Partition p;
    p.id = pj.at("id").get<uint32_t>();
    p.row_count = pj.at("row_count").get<uint64_t>();
    p.file = pj.at("file").get<std::string>();
    for (const auto& [path, sj] : pj.at("stats").items()) {
      auto it = types.find(path);
      if (it == types.end()) throw ParseError(origin + ": stats for unknown column " + path);
      p.stats[path] = stats_from_json(sj, it->second, origin);
    }
    h.partitions.push_back(std::move(p));
  }
  h.total_rows = j.at("total_rows").get<uint64_t>();
  h.total_bytes = j.at("total_bytes").get<uint64_t>();
  return h;
}

}  // namespace

const ColumnDef* DatasetHandle::find_column(const std::string& path) const {
  for (const ColumnDef& c : columns) {
    if (c.path == path) return &c;
  }
  return nullptr;
}

size_t DatasetHandle::column_index(const std::string& path) const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].path == path) return i;
  }
  throw NotFound("dataset " + name + " has no column " + path);
}

std::vector<std::string> DatasetHandle::column_paths() const {
  std::vector<std::string> out;
  out.reserve(columns.size());
  for (const ColumnDef& c : columns) out.push_back(c.path);
  return out;
}

Lake::Lake(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) throw IoError("cannot create lake root " + root_.string() + ": " + ec.message());
  load_existing();
}

void Lake::load_existing() {
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root_)) {
    if (entry.is_directory() && fs::exists(entry.path() / kManifestFile)) {
      dirs.push_back(entry.path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  for (const fs::path& dir : dirs) {
    const std::string origin = (dir / kManifestFile).string();
    ordered_json j;
    try {
      j = ordered_json::parse(read_file_bytes(dir / kManifestFile));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(origin + ": " + e.what());
    }
    DatasetHandle h = manifest_from_json(j, origin);
    if (h.name != dir.filename().string()) {
      throw ParseError(origin + ": manifest name does not match directory");
    }
    datasets_[h.name] = std::move(h);
  }
}

DatasetHandle Lake::write_dataset(const std::string& name, std::vector<ColumnDef> columns,
                                  const std::vector<Row>& rows, uint64_t partition_rows) {
  validate_dataset_name(name);
  validate_columns(columns);
  if (partition_rows == 0) throw InvalidArgument("partition_rows must be positive");

  const size_t ncols = columns.size();
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ncols) {
      throw SchemaError("row " + std::to_string(r) + " of dataset " + name + " has " +
                        std::to_string(rows[r].size()) + " cells, expected " +
                        std::to_string(ncols));
    }
    for (size_t c = 0; c < ncols; ++c) {
      const Value& v = rows[r][c];
      if (v.is_null()) continue;
      if (v.type() != columns[c].type) {
        throw TypeMismatch("row " + std::to_string(r) + ", column " + columns[c].path +
                           ": cell type does not match declared column type");
      }
      if (v.type() == ValueType::Text && v.as_text() == kNullToken) {
        throw InvalidArgument("text value equal to the null token is not representable (column " +
                              columns[c].path + ")");
      }
    }
  }

  const fs::path dir = root_ / name;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create dataset directory " + dir.string() + ": " + ec.message());

  DatasetHandle h;
  h.name = name;
  h.columns = std::move(columns);
  h.total_rows = rows.size();

  uint32_t part_id = 0;
  for (size_t begin = 0; begin < rows.size(); begin += partition_rows, ++part_id) {
    const size_t end = std::min(rows.size(), begin + partition_rows);
    Partition part;
    part.id = part_id;
    part.row_count = end - begin;
    part.file = partition_file_name(part_id);

    struct Acc {
      ColumnStats st;
      std::unordered_set<std::string> sample;
    };
    std::vector<Acc> acc(ncols);

    std::string payload;
    for (size_t r = begin; r < end; ++r) {
      for (size_t c = 0; c < ncols; ++c) {
        const Value& v = rows[r][c];
        std::string rendered = v.render();
        append_u32_le(payload, static_cast<uint32_t>(rendered.size()));
        payload += rendered;

        Acc& a = acc[c];
        if (v.is_null()) {
          ++a.st.null_count;
          continue;
        }
        if (!a.st.min || compare_values(v, *a.st.min) < 0) a.st.min = v;
        if (!a.st.max || compare_values(v, *a.st.max) > 0) a.st.max = v;
        if (a.sample.size() < ColumnStats::kDistinctSampleCap) a.sample.insert(rendered);
      }
    }
    write_file_bytes(dir / part.file, payload);
    h.total_bytes += payload.size();

    for (size_t c = 0; c < ncols; ++c) {
      Acc& a = acc[c];
      a.st.distinct_sample.assign(a.sample.begin(), a.sample.end());
      std::sort(a.st.distinct_sample.begin(), a.st.distinct_sample.end());
      part.stats[h.columns[c].path] = std::move(a.st);
    }
    h.partitions.push_back(std::move(part));
  }

  write_file_bytes(dir / kManifestFile, manifest_to_json(h).dump(2) + "\n");
  datasets_[name] = h;
  return h;
}

DatasetHandle Lake::create_dataset(const std::string& name, std::vector<ColumnDef> columns,
                                   const std::vector<Row>& rows, uint64_t partition_rows) {
  if (contains(name)) throw Conflict("dataset already exists: " + name);
  return write_dataset(name, std::move(columns), rows, partition_rows);
}

DatasetHandle Lake::replace_dataset(const std::string& name, std::vector<ColumnDef> columns,
                                    const std::vector<Row>& rows, uint64_t partition_rows) {
  if (contains(name)) drop_dataset(name);
  return write_dataset(name, std::move(columns), rows, partition_rows);
}

void Lake::drop_dataset(const std::string& name) {
  auto it = datasets_.find(name);
  if (it == datasets_.end()) throw NotFound("no such dataset: " + name);
  std::error_code ec;
  fs::remove_all(root_ / name, ec);
  if (ec) throw IoError("cannot remove dataset directory: " + ec.message());
  datasets_.erase(it);
}

bool Lake::contains(const std::string& name) const { return datasets_.count(name) > 0; }

const DatasetHandle& Lake::dataset(const std::string& name) const {
  auto it = datasets_.find(name);
  if (it == datasets_.end()) throw NotFound("no such dataset: " + name);
  return it->second;
}

std::vector<std::string> Lake::dataset_names() const {
  std::vector<std::string> names;
  names.reserve(datasets_.size());
  for (const auto& [name, _] : datasets_) names.push_back(name);
  return names;
}

DatasetHandle Lake::ingest(const fs::path& source, const std::string& name,
                           uint64_t partition_rows) {
  if (contains(name)) throw Conflict("dataset already exists: " + name);

  std::vector<fs::path> files;
  if (fs::is_directory(source)) {
    for (const auto& entry : fs::directory_iterator(source)) {
      if (entry.is_regular_file() && entry.path().filename().string().front() != '.') {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw InvalidArgument("source directory is empty: " + source.string());
  } else if (fs::is_regular_file(source)) {
    files.push_back(source);
  } else {
    throw NotFound("no such file or directory: " + source.string());
  }

  std::vector<std::string> header;
  std::vector<RawRow> data_rows;
  for (const fs::path& file : files) {
    const std::string origin = file.string();
    std::vector<RawRow> rows = parse_delimited(read_file_bytes(file), origin);
    if (rows.empty()) throw ParseError(origin + ": missing header line");
    std::vector<std::string> file_header;
    for (const RawCell& c : rows.front().cells) file_header.push_back(c.text);
    if (header.empty()) {
      header = file_header;
    } else if (header != file_header) {
      throw SchemaError(origin + ": header differs from first source file");
    }
    for (size_t r = 1; r < rows.size(); ++r) {
      if (rows[r].cells.size() != header.size()) {
        throw ParseError(origin + ": line " + std::to_string(rows[r].line) + ": expected " +
                         std::to_string(header.size()) + " fields, got " +
                         std::to_string(rows[r].cells.size()));
      }
      data_rows.push_back(std::move(rows[r]));
    }
  }

  const size_t ncols = header.size();
  std::vector<ValueType> types = infer_column_types(data_rows, ncols);
  std::vector<ColumnDef> columns;
  columns.reserve(ncols);
  for (size_t i = 0; i < ncols; ++i) columns.push_back({header[i], types[i]});
  validate_columns(columns);

  std::vector<Row> rows;
  rows.reserve(data_rows.size());
  for (const RawRow& raw : data_rows) {
    Row row;
    row.reserve(ncols);
    for (size_t i = 0; i < ncols; ++i) {
      const RawCell& cell = raw.cells[i];
      row.push_back(is_null_cell(cell) ? Value::null() : Value::parse(cell.text, types[i]));
    }
    rows.push_back(std::move(row));
  }
  return write_dataset(name, std::move(columns), rows, partition_rows);
}

DatasetHandle Lake::replace_from_file(const fs::path& source, const std::string& name,
                                      uint64_t partition_rows) {
  if (contains(name)) drop_dataset(name);
  return ingest(source, name, partition_rows);
}

std::vector<Row> Lake::scan(const DatasetHandle& handle, const std::vector<std::string>& columns,
                            const StatsPredicate& filter) const {
  const size_t ncols = handle.columns.size();
  std::vector<size_t> want;
  if (columns.empty()) {
    for (size_t i = 0; i < ncols; ++i) want.push_back(i);
  } else {
    for (const std::string& path : columns) want.push_back(handle.column_index(path));
  }

  std::vector<Row> out;
  for (const Partition& part : handle.partitions) {
    if (filter && !filter(part.stats)) continue;
    const fs::path file = root_ / handle.name / part.file;
    const std::string data = read_file_bytes(file);
    const std::string origin = file.string();
    rows_scanned_.fetch_add(part.row_count, std::memory_order_relaxed);

    size_t pos = 0;
    std::vector<std::string_view> cells(ncols);
    for (uint64_t r = 0; r < part.row_count; ++r) {
      for (size_t c = 0; c < ncols; ++c) {
        uint32_t len = read_u32_le(data, pos, origin);
        if (pos + len > data.size()) throw ParseError("truncated payload: " + origin);
        cells[c] = std::string_view(data.data() + pos, len);
        pos += len;
      }
      Row row;
      row.reserve(want.size());
      for (size_t idx : want) {
        std::string_view raw = cells[idx];
        row.push_back(raw == kNullToken ? Value::null()
                                        : Value::parse(raw, handle.columns[idx].type));
      }
      out.push_back(std::move(row));
    }
    if (pos != data.size()) throw ParseError("trailing bytes in payload: " + origin);
  }
  return out;
}

std::pair<std::optional<Value>, std::optional<Value>> Lake::dataset_min_max(
    const DatasetHandle& handle, const std::string& column) const {
  handle.column_index(column);  // throws NotFound when absent
  std::optional<Value> mn, mx;
  for (const Partition& part : handle.partitions) {
    auto it = part.stats.find(column);
    if (it == part.stats.end()) continue;
    const ColumnStats& st = it->second;
    if (st.min && (!mn || compare_values(*st.min, *mn) < 0)) mn = st.min;
    if (st.max && (!mx || compare_values(*st.max, *mx) > 0)) mx = st.max;
  }
  return {mn, mx};
}

}  // namespace lakeprune
