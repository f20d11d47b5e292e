#ifndef DEBTSIM_RNG_HPP
#define DEBTSIM_RNG_HPP

#include <cstdint>

namespace debtsim {

/// SplitMix64 stream, used to expand a 64-bit seed into generator state.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

/// xoshiro256** generator (Blackman/Vigna), seeded via SplitMix64.
/// Fully specified 64-bit algorithm, so runs are bit-reproducible across
/// platforms; each run owns one independent stream keyed by its seed.
class Xoshiro256StarStar {
public:
    static constexpr const char* kAlgorithmId = "xoshiro256**/splitmix64";

    explicit Xoshiro256StarStar(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Bernoulli(p) draw.
    bool bernoulli(double p) { return next_unit() < p; }

    /// Uniform integer in [0, n), n >= 1. Rejection-free modulo is fine here:
    /// n is tiny (client counts), so the bias is far below statistical noise,
    /// but we still debias for exactness.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

}  // namespace debtsim

#endif
