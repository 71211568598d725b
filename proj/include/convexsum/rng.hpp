// Deterministic random numbers.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Range reduction is done here rather than through
// std::uniform_int_distribution (implementation-defined), so a seed replays
// bit-exactly on every platform.
#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace convexsum {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent seed for sub-stream `stream` of `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [lo, hi].
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
        if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
        const std::uint64_t span = hi - lo + 1;
        if (span == 0) return next();  // full 64-bit range
        const std::uint64_t reject_below = (0 - span) % span;
        std::uint64_t r;
        do {
            r = next();
        } while (r < reject_below);
        return lo + r % span;
    }

    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto off = uniform(0, static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo));
        return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + off);
    }

    bool coin() { return (next() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

}  // namespace convexsum
