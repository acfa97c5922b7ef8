#ifndef MCDS_RANDOM_HPP
#define MCDS_RANDOM_HPP

#include <cstdint>

namespace mcds {

// splitmix64. Deterministic across platforms, which std::uniform_int_distribution
// is not; runs must reproduce bit-exactly for a fixed seed.
class RandomStream {
public:
    explicit RandomStream(uint64_t seed = 0) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by rejection.
    uint64_t below(uint64_t bound) {
        if (bound <= 1) return 0;
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do { x = next(); } while (x >= limit);
        return x % bound;
    }

    // True with probability exactly 1/k.
    bool one_in(uint64_t k) { return below(k) == 0; }

    double unit() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

    static uint64_t mix(uint64_t seed, uint64_t stream_id) {
        RandomStream s(seed ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1)));
        return s.next();
    }

private:
    uint64_t state_;
};

}  // namespace mcds

#endif
