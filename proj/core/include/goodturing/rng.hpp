// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace goodturing {

/// Identifier of the generator and stream-derivation rule, recorded in
/// report metadata so results can be replayed.
inline constexpr const char* kRngId = "mt19937_64+splitmix64-streams/v1";

/// SplitMix64 step (Steele, Lea, Flood 2014; public domain reference
/// implementation). Used only to mix seeds, never as the main generator.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stream derivation rule: the user seed plus (n, trial_index) is mixed
/// through three SplitMix64 rounds into the seed of an independent stream.
/// Trials never share a stream, and the same (seed, n, trial) triple always
/// reproduces the same string regardless of thread count.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t n,
                                        std::uint64_t trial_index) {
    std::uint64_t state = seed;
    std::uint64_t s = splitmix64(state);
    state = s ^ (n * 0xd1342543de82ef95ULL);
    s = splitmix64(state);
    state = s ^ ((trial_index + 1) * 0xaf251af3b0f025b5ULL);
    return splitmix64(state);
}

/// Seedable reproducible generator. std::mt19937_64 is fully pinned by the
/// C++ standard; the distribution helpers below are hand-rolled because the
/// standard's <random> distributions are implementation-defined and would
/// break cross-toolchain reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t stream_seed) : engine_(stream_seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Lemire multiply-shift with rejection,
    /// so the result is exactly uniform. bound must be >= 1.
    std::uint64_t below(std::uint64_t bound) {
        using u128 = unsigned __int128;
        std::uint64_t x = engine_();
        u128 m = static_cast<u128>(x) * static_cast<u128>(bound);
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                x = engine_();
                m = static_cast<u128>(x) * static_cast<u128>(bound);
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace goodturing
