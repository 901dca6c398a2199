#pragma once

#include <cstdint>

namespace orsched {

/// SplitMix64 (Steele, Lea, Flood). Bit-exact on every platform, which is the
/// only reason it is used here: seeded runs must reproduce byte for byte.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// next() mod bound; bound must be positive.
    constexpr std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    /// Uniform-ish integer in [lo, hi] via modulo.
    constexpr std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    constexpr std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

/// First SplitMix64 output for the given seed; a cheap 64-bit mixer.
constexpr std::uint64_t splitmix64_mix(std::uint64_t x) { return SplitMix64(x).next(); }

}  // namespace orsched
