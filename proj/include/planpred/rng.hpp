#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "planpred/errors.hpp"

namespace planpred {

// Splitmix64 finalizer; decorrelates small consecutive seeds.
inline std::uint64_t mix_u64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic random source. The engine's output sequence is pinned by
// the standard, and every distribution here is hand-rolled because the
// std:: distribution objects are implementation-defined and would break
// byte-identical reruns across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix_u64(seed)) {}

    // Independent stream id -> seed, so parallel or out-of-order use of
    // per-item generators stays reproducible.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        return mix_u64(mix_u64(seed) + stream);
    }

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased integer in [lo, hi] via rejection sampling.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw DomainError("empty integer range");
        const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        if (range == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit span
        const std::uint64_t reject_below = (0 - range) % range;
        std::uint64_t x = next_u64();
        while (x < reject_below) x = next_u64();
        return lo + static_cast<std::int64_t>(x % range);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Box-Muller; generates pairs and caches the second draw.
    double normal(double mean, double sd) {
        double z;
        if (cached_) {
            z = *cached_;
            cached_.reset();
        } else {
            const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
            const double u2 = uniform01();
            const double radius = std::sqrt(-2.0 * std::log(u1));
            const double angle = 6.283185307179586476925286766559 * u2;
            z = radius * std::cos(angle);
            cached_ = radius * std::sin(angle);
        }
        return mean + sd * z;
    }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        if (items.empty()) throw DomainError("pick from empty list");
        return items[static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(items.size()) - 1))];
    }

    // Index drawn according to a normalized probability vector.
    std::size_t weighted_index(const std::vector<double>& probs) {
        if (probs.empty()) throw DomainError("weighted draw from empty list");
        const double u = uniform01();
        double cumulative = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            cumulative += probs[i];
            if (u < cumulative) return i;
        }
        return probs.size() - 1;  // fp slack: cumulative may end at 1 - eps
    }

private:
    std::mt19937_64 engine_;
    std::optional<double> cached_;
};

}  // namespace planpred
