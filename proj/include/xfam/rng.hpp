#pragma once

#include <cstdint>

namespace xfam {

// splitmix64 (Steele, Lea, Flood 2014).  Tiny, seedable, and the i-th output
// is addressable directly, which lets sampled searches hand out disjoint
// trial ranges to worker threads without any shared state.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, bound) via rejection; bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }
};

// The i-th value of the stream seeded with `seed`, computed without stepping
// through the first i-1 values.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t i) {
  SplitMix64 g(seed + i * 0x9e3779b97f4a7c15ULL);
  return g.next();
}

}  // namespace xfam
