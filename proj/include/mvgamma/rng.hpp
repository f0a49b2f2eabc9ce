#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace mvg {

// SplitMix64 step (Vigna's reference constants). Used only to expand a
// (seed, stream) pair into generator state.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ with explicit (seed, stream) derivation.
//
// Sweep drivers give every trial its own stream id, so results do not depend
// on which worker thread picks up which trial. All variate generation is
// hand-rolled on top of next_u64(); the standard <random> distributions are
// implementation-defined and would break byte-identical reports across
// toolchains.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t s = seed;
        (void)splitmix64_next(s);
        s ^= 0xA5A5A5A55A5A5A5AULL + stream * 0x9E3779B97F4A7C15ULL;
        for (auto& word : state_) word = splitmix64_next(s);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a logarithm argument.
    double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    // Unbiased integer on [0, n) via Lemire's multiply-shift rejection.
    std::uint64_t below(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Integer on [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    double exponential() { return -std::log(uniform_pos()); }

    // Standard normal via Box-Muller; second variate cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double radius = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double angle = 6.283185307179586476925286766559 * uniform();
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace mvg
