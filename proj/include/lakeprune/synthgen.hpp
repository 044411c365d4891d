#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lakeprune/lake.hpp"
#include "lakeprune/rng.hpp"

namespace lakeprune {

// Probability of each derivation when a new table is spawned. Must sum to 1.
struct OpMix {
  double filter_sample = 0.35;
  double add_rows = 0.25;
  double add_columns = 0.15;
  double add_noise = 0.15;
  double compose = 0.10;
};

struct GenSpec {
  int roots = 4;
  int tables = 60;  // total, roots included
  double zipf_exponent = 1.1;
  int root_rows_min = 300;
  int root_rows_max = 700;
  int root_cols_min = 4;
  int root_cols_max = 8;
  OpMix op_mix;
  uint64_t seed = 1;
};

GenSpec load_gen_spec(const std::filesystem::path& file);
void validate_gen_spec(const GenSpec& spec);

// One derivation event. The fractions are exact, measured after writing, so
// coincidental containment is labeled as such; -1 means the schemas do not
// even nest in that direction.
struct LineageRecord {
  std::string child;
  std::string parent;
  std::vector<std::string> ops;
  double cm_child_in_parent = -1.0;  // share of child rows present in parent
  double cm_parent_in_child = -1.0;
};

struct GenResult {
  std::vector<std::string> names;  // creation order, roots first
  std::vector<LineageRecord> lineage;
};

// Index in [0, n) with probability proportional to (index + 1)^-exponent,
// so earlier tables are preferred as derivation sources.
size_t zipf_pick(size_t n, double exponent, Rng& rng);

// Populates an empty lake. Same spec and seed produce byte-identical
// datasets and lineage.
GenResult generate(Lake& lake, const GenSpec& spec);

void save_lineage(const std::filesystem::path& file, const std::vector<LineageRecord>& records);
std::vector<LineageRecord> load_lineage(const std::filesystem::path& file);

}  // namespace lakeprune
