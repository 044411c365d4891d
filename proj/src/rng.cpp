#include "lakeprune/rng.hpp"

#include "lakeprune/errors.hpp"

namespace lakeprune {

namespace {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

uint64_t Rng::next_u64() { return splitmix64(state_); }

uint64_t Rng::below(uint64_t bound) {
  if (bound == 0) throw InvalidArgument("Rng::below: bound must be positive");
  // Rejection sampling over the largest multiple of bound.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % bound;
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int64_t Rng::int_in(int64_t lo, int64_t hi) {
  if (lo > hi) throw InvalidArgument("Rng::int_in: empty range");
  const uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
  if (span == 0) return static_cast<int64_t>(next_u64());  // full 64-bit range
  return lo + static_cast<int64_t>(below(span));
}

double Rng::real_in(double lo, double hi) {
  if (!(lo <= hi)) throw InvalidArgument("Rng::real_in: empty range");
  return lo + (hi - lo) * next_double();
}

uint64_t mix_seed(uint64_t base, std::string_view parent, std::string_view child) {
  uint64_t s = base;
  s ^= fnv1a(parent) + 0x9e3779b97f4a7c15ULL;
  splitmix64(s);
  uint64_t h1 = splitmix64(s);
  s = h1 ^ (fnv1a(child) + 0x9e3779b97f4a7c15ULL);
  return splitmix64(s);
}

}  // namespace lakeprune
