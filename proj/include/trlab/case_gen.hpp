#pragma once
/**
 * @file case_gen.hpp
 * @brief Deterministic random-case generation.
 *
 * Every randomized check in the suites and tests draws from SplitMix64 with
 * an explicit seed, so any failure is reproducible from the (kind, family, n,
 * seed) tuple alone.  Generated rationals are positive with numerator and
 * denominator bounded by a small height (default 50): small enough to keep
 * exact arithmetic fast, large enough that accidental identities do not
 * survive 100+ cases.
 */

#include <cstdint>

#include "trlab/rat.hpp"

namespace trlab {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    /// Uniform in [lo, hi] inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (next_u64() & 1) != 0; }

    /// Positive rational with numerator, denominator in [1, height].
    Rat rat_pos(long height = 50) {
        return Rat(BigInt(range(1, height)), BigInt(range(1, height)));
    }

    /// Nonzero rational, either sign, same height bound.
    Rat rat_nonzero(long height = 50) {
        Rat r = rat_pos(height);
        return coin() ? r : -r;
    }

    /// Integer in [-bound, bound].
    Rat rat_int(long bound) { return Rat(range(-bound, bound)); }

private:
    std::uint64_t state_;
};

}  // namespace trlab
