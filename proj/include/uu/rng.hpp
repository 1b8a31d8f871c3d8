#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace uu {

// splitmix64 step; used for seed derivation only.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives a child seed from a parent seed and a list of stream tags, so that
// every replication / grid point / run gets its own independent stream and
// results do not depend on scheduling order.
inline std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t s = seed ^ 0x6a09e667f3bcc909ULL;
    splitmix64(s);
    for (std::uint64_t t : tags) {
        s ^= t + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
        splitmix64(s);
    }
    return splitmix64(s);
}

// Deterministic random stream. mt19937_64 with a single-value seed is fully
// specified by the standard, and the double conversion below avoids
// std::uniform_real_distribution, whose output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // uniform in [0, n); n > 0
    std::size_t next_index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace uu
