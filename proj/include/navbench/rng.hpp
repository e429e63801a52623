#pragma once

#include <cstdint>

namespace navbench {

/// Deterministic 64-bit generator (xoshiro-style splitmix seeding + mt19937_64
/// core replaced by a small PCG-like stepper). All randomized stages draw from
/// this so results are byte-reproducible across platforms; std:: distributions
/// are implementation-defined and never used.
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        // splitmix64 to spread poor seeds
        state_ = seed + 0x9e3779b97f4a7c15ull;
        for (int i = 0; i < 2; ++i) {
            uint64_t z = state_;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            state_ = z ^ (z >> 31);
        }
    }

    uint64_t next_u64() {
        // xorshift64*
        uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545f4914f6cdd1dull;
    }

    /// Uniform double in [0, 1) with 53 bits of randomness.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). Rejection-free modulo is fine for the small
    /// n used here (bias < 2^-60).
    uint64_t uniform_index(uint64_t n) { return next_u64() % n; }

  private:
    uint64_t state_ = 0;
};

/// Stable per-episode seed derivation so parallel and remote runs agree.
inline uint64_t derive_episode_seed(uint64_t base_seed, uint64_t episode_id) {
    uint64_t z = base_seed ^ (0x9e3779b97f4a7c15ull * (episode_id + 1));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace navbench
