#pragma once

/// @file rng.hpp
/// @brief Deterministic random stream used by a trial.
///
/// Generator: std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Bounded draws use rejection sampling on the raw 64-bit output so
/// results do not depend on the standard library's distribution classes.
///
/// Per-trial seed: trial_seed(base, i) = splitmix64(base ^ splitmix64(i + 1)).

#include <cstdint>
#include <random>

namespace ephemera {

/// SplitMix64 finalizer (a bijection on 64-bit integers).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial_index) noexcept {
    return splitmix64(base_seed ^ splitmix64(trial_index + 1));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % bound;
    }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace ephemera
