#include "barronlab/common.hpp"

#include <fmt/format.h>

namespace barronlab {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) { return Rng(mix_seed(seed, stream)); }

std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  if (n == 0) throw RangeError("uniform_index: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

void check_unit_cube(std::span<const double> x, std::size_t dim) {
  if (x.size() != dim)
    throw DomainError(fmt::format("expected a point of dimension {}, got {}", dim, x.size()));
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError(fmt::format("coordinate {} outside [0,1]", v));
  }
}

}  // namespace barronlab
