#pragma once

#include <cstdint>

// Counter-based RNG: every draw is a pure hash of (seed, stream, counter), so
// randomized probes are reproducible independent of evaluation order.

namespace fractbem {

struct CounterRng {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t bits(std::uint64_t counter) const {
    std::uint64_t h = mix(seed ^ 0x243f6a8885a308d3ull);
    h = mix(h ^ stream * 0x452821e638d01377ull);
    return mix(h ^ counter);
  }

  // uniform in [0,1)
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  double uniform(std::uint64_t counter, double lo, double hi) const {
    return lo + (hi - lo) * uniform(counter);
  }
};

}  // namespace fractbem
