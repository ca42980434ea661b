#pragma once

#include <cstdint>

namespace monofcw {

// Deterministic 64-bit generator (splitmix64). Used instead of <random>
// distributions wherever outputs land in files or tests, because all
// artifact outputs must be reproducible across standard libraries.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

// Independent child stream for (base, index); lets trials run in any order.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  SplitMix64 mix(base ^ (0xA24BAED4963EE407ull + index * 0x9E3779B97F4A7C15ull));
  return mix.next();
}

}  // namespace monofcw
