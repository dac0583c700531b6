#pragma once

// SplitMix64 (Steele/Lea/Vigna). Chosen over the platform engines so that
// seeded experiment output is reproducible across compilers and languages.
// Sample k of an experiment draws from substream(seed, k), which offsets
// the state by (k+1) times the golden-ratio increment; serial and parallel
// evaluation therefore emit identical rows.

#include <cstdint>

namespace one21 {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
        return SplitMix64(seed + (index + 1) * kGamma);
    }

    std::uint64_t next() {
        state_ += kGamma;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53 random bits
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
    std::uint64_t state_;
};

}  // namespace one21
