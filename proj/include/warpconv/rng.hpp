#pragma once

#include <cstdint>

#include "warpconv/rational.hpp"

namespace warpconv {

// splitmix64: deterministic, seedable, fine statistical quality for test
// sampling. Not for cryptography.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    uint64_t below(uint64_t n) { return next() % n; }

    // uniform in [lo, hi] inclusive
    int64_t range(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    // Derives an independent stream for sample #index; used by the batch
    // checks so samples are reproducible individually.
    static SplitMix64 derived(uint64_t masterSeed, uint64_t index) {
        SplitMix64 mix(masterSeed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
        mix.next();
        return mix;
    }

private:
    uint64_t state_;
};

// Sampling ranges for exact rational draws. These constants shape coverage
// only; every downstream check is an exact decision.
struct RationalSampleConfig {
    int64_t numAbsMax = 12;
    int64_t denMax = 8;
};

inline Rational sample_rational(SplitMix64& rng, const RationalSampleConfig& cfg = {}) {
    int64_t num = rng.range(-cfg.numAbsMax, cfg.numAbsMax);
    int64_t den = rng.range(1, cfg.denMax);
    return Rational(BigInt(num), BigInt(den));
}

inline Rational sample_positive_rational(SplitMix64& rng, const RationalSampleConfig& cfg = {}) {
    int64_t num = rng.range(1, cfg.numAbsMax);
    int64_t den = rng.range(1, cfg.denMax);
    return Rational(BigInt(num), BigInt(den));
}

inline Rational sample_nonneg_rational(SplitMix64& rng, const RationalSampleConfig& cfg = {}) {
    int64_t num = rng.range(0, cfg.numAbsMax);
    int64_t den = rng.range(1, cfg.denMax);
    return Rational(BigInt(num), BigInt(den));
}

inline GaussianRational sample_gaussian(SplitMix64& rng, const RationalSampleConfig& cfg = {}) {
    return GaussianRational(sample_rational(rng, cfg), sample_rational(rng, cfg));
}

}  // namespace warpconv
