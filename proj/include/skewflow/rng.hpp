#pragma once

#include <cstdint>

namespace skewflow {

/// Small deterministic RNG (splitmix64). Used instead of <random> engines and
/// distributions so that streams are identical for a given seed on every
/// platform and independent of the thread count: each sample index derives its
/// own generator from (seed, index).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Derive an independent stream for a sample index.
    static Rng for_index(std::uint64_t seed, std::uint64_t index) {
        Rng r(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
        r.next_u64();
        return r;
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  private:
    std::uint64_t state_;
};

}  // namespace skewflow
