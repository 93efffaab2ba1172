#pragma once

#include <cmath>
#include <cstdint>

namespace ncfffd {

// Deterministic RNG used by every Monte Carlo path. Implemented here rather
// than with <random> distributions so that streams are bit-identical across
// standard libraries and worker counts.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    // Substream for block `index` of the stream identified by (seed, stream_id).
    static Rng substream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t index) {
        std::uint64_t sm = seed;
        const std::uint64_t a = splitmix64(sm);
        sm = a ^ (stream_id * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
        const std::uint64_t b = splitmix64(sm);
        sm = b ^ (index * 0x9e3779b97f4a7c15ULL + 1ULL);
        return Rng(splitmix64(sm));
    }

    std::uint64_t next_u64() {  // xoshiro256++
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

    // Uniform on (0,1]: never 0, so logs are safe.
    double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Uniform on [0,1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bit() { return (next_u64() >> 63) != 0; }

    // Uniform integer in [0, n).
    std::uint32_t below(std::uint32_t n) {
        return static_cast<std::uint32_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    double normal() {  // Marsaglia polar
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        cached_ = v * f;
        have_cached_ = true;
        return u * f;
    }

    double exponential(double mean) { return -mean * std::log(uniform_pos()); }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace ncfffd
