#pragma once

#include <cstdint>

namespace fiso {

// Deterministic splitmix64 generator. We avoid <random> distributions so
// that seeded runs are bit-identical across standard library
// implementations, and we support splitting independent child streams from
// the original seed so that per-stage draws do not depend on how much the
// parent stream has been consumed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in {0, ..., bound-1}. bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

    // Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Child stream derived from the original seed and a stream id only.
    Rng split(std::uint64_t stream) const {
        std::uint64_t s = seed_ ^ (stream * 0xD2B74407B1CE6E93ULL + 0x8BADF00D5DEECE66ULL);
        Rng child(s);
        child.next();
        return child;
    }

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

}  // namespace fiso
