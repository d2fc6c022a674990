#pragma once

#include <cmath>
#include <cstdint>

namespace spreadnet {

// SplitMix64 mix function. Used for seeding and for deriving per-replicate
// streams from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Seed for stream `index` derived from `master`. Equivalent to taking the
// (index+1)-th output of a SplitMix64 sequence started at `master`, so
// distinct indices give decorrelated streams and the mapping is fixed across
// platforms and thread counts.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t state = master + index * 0x9e3779b97f4a7c15ull;
    return splitmix64(state);
}

// xoshiro256++ (Blackman & Vigna). Self-contained so that streams are
// bit-reproducible across standard libraries; std::uniform_*_distribution is
// implementation-defined and would break seeded regression outputs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Exponential(1) waiting time; uniform01() < 1 keeps the log argument > 0.
    double exponential() { return -std::log1p(-uniform01()); }

    bool bernoulli(double p) { return uniform01() < p; }

    // Unbiased integer in [0, n), n >= 1 (Lemire's method).
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t x = next_u64();
        unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<unsigned __int128>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

} // namespace spreadnet
