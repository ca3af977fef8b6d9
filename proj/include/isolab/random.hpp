#pragma once

#include <cstdint>
#include <random>

#include "isolab/graph.hpp"

namespace isolab {

/// Seeded generator with platform-independent output. Wraps mt19937_64 (whose
/// sequence the standard fixes) and derives doubles and bounded integers
/// itself, since the std distributions are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    /// Uniform integer in [0, bound); bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

/// Fisher-Yates shuffle of the identity.
Permutation random_permutation(std::size_t n, Rng& rng);

}  // namespace isolab
