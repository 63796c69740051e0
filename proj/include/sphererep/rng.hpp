#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

namespace sphererep {

/// Deterministic random stream backed by mt19937_64.
///
/// Conversions from raw 64-bit draws to doubles are hand-rolled so that
/// every value depends only on the engine stream, never on the standard
/// library's distribution implementations (which are unspecified and
/// differ between toolchains).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    /// splitmix64-style mixer for deriving independent sub-seeds.
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 0x632be59bd9b4e019ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound), bound >= 1. Rejection sampled, unbiased.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (std::numeric_limits<std::uint64_t>::max() / bound);
        for (;;) {
            const std::uint64_t x = gen_();
            if (x < limit) return x % bound;
        }
    }

    /// Standard normal via Box-Muller (pairs cached).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace sphererep
