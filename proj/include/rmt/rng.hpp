// rng.hpp
//
// Counter-keyed splittable random stream.  Every consumer opens its own
// stream from (seed, index); streams for distinct indices are statistically
// independent and a stream's output never depends on which other streams
// were opened.  That makes batch output a pure function of (seed, index)
// regardless of how work is scheduled across threads.

#pragma once

#include <cmath>
#include <cstdint>

namespace rmt {

// SplitMix64 finalizer; full-avalanche 64-bit mix.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// xoshiro256++ seeded from a (seed, stream) key via SplitMix64.
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t salt = 0) {
        std::uint64_t k = seed;
        k = mix64(k ^ mix64(stream));
        k = mix64(k ^ mix64(salt));
        for (auto& si : s_) {
            k = mix64(k);
            si = k;
        }
        // all-zero state is invalid for xoshiro
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t next_u64() {
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

    // uniform on (0,1); never returns 0 or 1
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal via Box-Muller (explicit, libm-deterministic)
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    bool next_bit() { return (next_u64() >> 63) != 0; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace rmt
