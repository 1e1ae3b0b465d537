#pragma once

#include <cstdint>

namespace qsdc {

/// Counter-based deterministic random generator (splitmix64 output function
/// over an incrementing counter). Every random decision in a run is a pure
/// function of (seed, draw index), so transcripts replay exactly. Independent
/// streams for trials/fragments come from derive().
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() { return mix(seed_ + (++counter_) * kGamma); }

    /// Uniform in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool next_bit() { return (next_u64() >> 63) != 0; }

    /// Uniform integer in [0, n). Multiply-shift; bias is < 2^-64 per draw.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// Independent child stream. Children with distinct tags never collide
    /// with each other or with the parent's own draw sequence.
    CounterRng derive(std::uint64_t tag) const {
        return CounterRng(mix(seed_ ^ mix(tag + kLeaf)));
    }

    std::uint64_t seed() const { return seed_; }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
    static constexpr std::uint64_t kLeaf = 0xA3EC647659359ACDull;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

} // namespace qsdc
