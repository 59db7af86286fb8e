// rng.hpp - Deterministic 64-bit PRNG for seeded Monte Carlo runs.
//
// splitmix64 keeps the whole generator state in one word, which makes
// per-episode substream derivation trivial: every episode gets its own
// generator seeded from (master_seed, episode_index), so results do not
// depend on how episodes are scheduled across workers.

#pragma once

#include <cstdint>

namespace fadelim {

// Finalizing mixer from splitmix64 (Steele/Lea/Flood). Bijective on 64 bits.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Seed for episode `index` of a run keyed by `master_seed`. Pure function,
// so any worker can compute it for any episode.
inline std::uint64_t episode_seed(std::uint64_t master_seed, std::uint64_t index) {
    return mix64(master_seed ^ mix64(index + 0xD1B54A32D192ED03ULL));
}

}  // namespace fadelim
