#pragma once

// Deterministic, splittable random streams.  A stream is named by
// (seed, stream_id); the generator is xoshiro256++ seeded through a
// splitmix64 chain, so any (seed, stream_id) pair can be materialized
// statelessly anywhere in the program.  Parallel code derives disjoint
// child streams with substream() instead of sharing generator state.

#include <cstdint>
#include <cmath>
#include <numbers>

namespace cup {

struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

namespace rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    return splitmix64(s);
}

class Generator {
  public:
    explicit Generator(RngStream stream) {
        std::uint64_t s = mix(stream.seed, stream.stream_id);
        for (auto& word : state_) word = splitmix64(s);
    }

    std::uint64_t next() {
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

    /// Uniform on [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Standard normal via Box-Muller (pairs cached).
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    /// Gamma(shape, scale 1) via Marsaglia-Tsang, boosted for shape < 1.
    /// Strictly positive: the boost factor u^{1/shape} can underflow for very
    /// small shapes, and a zero draw would poison every ratio built on it.
    double gamma(double shape) {
        if (shape < 1.0) {
            for (;;) {
                double u = uniform01();
                while (u == 0.0) u = uniform01();
                const double g = gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
                if (g > 0.0) return g;
            }
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0) continue;
            v = v * v * v;
            const double u = uniform01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (u > 0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
    bool has_cached_ = false;
    double cached_ = 0;
};

}  // namespace rng

/// Child stream: same seed, stream_id mixed with the salt.  Distinct salts
/// give statistically independent streams; the map is deterministic.
inline RngStream substream(RngStream s, std::uint64_t salt) {
    return RngStream{s.seed, rng::mix(s.stream_id, salt)};
}

}  // namespace cup
