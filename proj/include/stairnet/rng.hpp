#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace stairnet {

// Counter-based pseudorandomness: every draw is a pure function of
// (seed, purpose tag, counter, lane), so any sample in a run can be
// recomputed without replaying history.
namespace rng {

constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

struct Key {
    std::uint64_t seed = 0;
    std::uint64_t tag = 0;

    Key() = default;
    Key(std::uint64_t s, std::string_view purpose) : seed(s), tag(hash_tag(purpose)) {}

    std::uint64_t bits(std::uint64_t counter, std::uint64_t lane) const {
        std::uint64_t z = splitmix64(seed ^ 0x2545f4914f6cdd1dULL);
        z = splitmix64(z ^ tag);
        z = splitmix64(z ^ counter);
        return splitmix64(z ^ (lane * 0x9e3779b97f4a7c15ULL + 1));
    }

    /// Uniform in (0,1), never exactly 0 or 1.
    double uniform01(std::uint64_t counter, std::uint64_t lane) const {
        return (static_cast<double>(bits(counter, lane) >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform in [-r, r].
    double uniform_sym(std::uint64_t counter, std::uint64_t lane, double r) const {
        return r * (2.0 * uniform01(counter, lane) - 1.0);
    }

    /// Rademacher +/-1.
    double sign(std::uint64_t counter, std::uint64_t lane) const {
        return (bits(counter, lane) >> 63) ? 1.0 : -1.0;
    }

    /// Standard normal via Box-Muller; consumes lanes (2*lane, 2*lane+1).
    double gaussian(std::uint64_t counter, std::uint64_t lane) const {
        double u1 = uniform01(counter, 2 * lane);
        double u2 = uniform01(counter, 2 * lane + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
};

}  // namespace rng
}  // namespace stairnet
