#pragma once

// Counter-friendly deterministic PRNG. Every consumer derives an
// independent stream from (seed, index) via stream_key, so sample i can be
// produced without generating samples 0..i-1 and results never depend on
// how work is split across workers.

#include <cstdint>

namespace ffx {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer (Stafford mix13)
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        state += kGolden;
        return mix64(state);
    }
};

inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index + kGolden));
}

}  // namespace ffx
