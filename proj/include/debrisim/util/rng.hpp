#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace debrisim {

/// Deterministic keyed random stream (splitmix64 core). Streams are forked
/// by key so that parallel evaluation order can never change the draws.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(mix(seed ^ 0x6A09E667F3BCC909ULL)) {}

    RandomStream fork(std::uint64_t k1, std::uint64_t k2 = 0, std::uint64_t k3 = 0) const {
        std::uint64_t s = state_;
        s = mix(s ^ mix(k1 + 0x9E3779B97F4A7C15ULL));
        s = mix(s ^ mix(k2 + 0xBF58476D1CE4E5B9ULL));
        s = mix(s ^ mix(k3 + 0x94D049BB133111EBULL));
        RandomStream out(0);
        out.state_ = s;
        return out;
    }

    RandomStream fork(std::string_view tag, std::uint64_t k1 = 0, std::uint64_t k2 = 0) const {
        std::uint64_t h = 0xCBF29CE484222325ULL;
        for (char c : tag) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001B3ULL;
        }
        return fork(h, k1, k2);
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard Gaussian via Box-Muller (pinned implementation so the same
    /// seed reproduces byte-identical outputs everywhere).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace debrisim
