#pragma once

#include <cstdint>
#include <string_view>

namespace lakeprune {

// Deterministic 64-bit generator (splitmix64). Used instead of <random>
// distributions so that seeded artifacts are byte-identical across platforms
// and standard library versions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64();

  // Unbiased integer in [0, bound); bound must be positive.
  uint64_t below(uint64_t bound);

  // Uniform double in [0, 1).
  double next_double();

  // Inclusive integer range.
  int64_t int_in(int64_t lo, int64_t hi);

  double real_in(double lo, double hi);

 private:
  uint64_t state_;
};

// Stream seed for work on a (parent, child) pair. Derived from the node
// names rather than processing order, so parallel, re-ordered, and
// incremental runs sample identically.
uint64_t mix_seed(uint64_t base, std::string_view parent, std::string_view child);

}  // namespace lakeprune
