#pragma once

#include <cstdint>

#include "json.hpp"

namespace lakeprune {

// Work accounting shared by the pruning stages and the oracles.
// rows_scanned counts rows physically read from partition payloads;
// nominal_row_ops counts the row-by-row work a naive comparison would
// have performed, so the two can be compared directly in reports.
struct OpCounters {
  uint64_t schema_pair_ops = 0;     // schema subset tests, incl. sort and cluster checks
  uint64_t metadata_ops = 0;        // per-edge statistics examinations
  uint64_t rows_scanned = 0;        // rows read from storage
  uint64_t row_membership_ops = 0;  // hash-set probes of individual rows
  uint64_t nominal_row_ops = 0;     // naive row-comparison equivalent

  // Edge counts after each stage of the pipeline, when known.
  uint64_t edges_schema = 0;
  uint64_t edges_minmax = 0;
  uint64_t edges_content = 0;

  OpCounters& operator+=(const OpCounters& o) {
    schema_pair_ops += o.schema_pair_ops;
    metadata_ops += o.metadata_ops;
    rows_scanned += o.rows_scanned;
    row_membership_ops += o.row_membership_ops;
    nominal_row_ops += o.nominal_row_ops;
    edges_schema += o.edges_schema;
    edges_minmax += o.edges_minmax;
    edges_content += o.edges_content;
    return *this;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["schema_pair_ops"] = schema_pair_ops;
    j["metadata_ops"] = metadata_ops;
    j["rows_scanned"] = rows_scanned;
    j["row_membership_ops"] = row_membership_ops;
    j["nominal_row_ops"] = nominal_row_ops;
    j["edges"] = {{"sgb", edges_schema}, {"mmp", edges_minmax}, {"clp", edges_content}};
    return j;
  }
};

}  // namespace lakeprune
