#pragma once

#include <cmath>
#include <cstdint>

namespace geocert {

/// Counter-based generator: draw t of stream s under seed q is a fixed hash
/// of (q, s, t). Streams can be split per task without sharing state, so
/// parallel runs are bit-reproducible.
class Rng {
  public:
    explicit Rng(uint64_t seed, uint64_t stream = 0)
        : seed_(seed), stream_(stream), base_(mix(stream + mix(seed))) {}

    Rng split(uint64_t substream) const {
        return Rng(seed_, mix(stream_ + 0x9e3779b97f4a7c15ull) ^ substream);
    }

    uint64_t next() { return mix(base_ + counter_++); }

    /// Uniform on [0,1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    uint64_t uniform_int(uint64_t n) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    /// Standard normal via Box-Muller; caches the second draw.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1, u2;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        u2 = uniform();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 6.283185307179586476925286766559 * u2;
        cached_ = rad * std::sin(ang);
        have_cached_ = true;
        return rad * std::cos(ang);
    }

    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

  private:
    uint64_t seed_;
    uint64_t stream_;
    uint64_t base_;
    uint64_t counter_ = 0;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace geocert
