#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace riesz {

// SplitMix64 step. Small, fast, and trivially seedable, which is what the
// batch drivers need: one independent stream per work item, derived from
// (seed, index) alone, so results do not depend on scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // Warm up so that small seeds do not produce correlated leading draws.
        next_u64();
        next_u64();
    }

    /// Deterministic substream for item `index` of a seeded batch.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t s = seed;
        const std::uint64_t h = splitmix64(s);
        return Rng(h ^ (0xD1342543DE82EF95ull * (index + 1)));
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        if (hi <= lo) return lo;
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next_u64() % span);
    }

    /// Standard normal (Box-Muller; one fresh pair per call).
    double gaussian() {
        const double u1 = 1.0 - uniform(); // (0, 1], keeps log finite
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    std::complex<double> complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

private:
    std::uint64_t state_;
};

} // namespace riesz
