#pragma once

// Counter-based random numbers keyed by (master seed, stream id, draw index).
// Every variate is a pure function of its coordinates, so sample streams are
// reproducible independently of worker count or evaluation order.

#include <cmath>
#include <cstdint>
#include <utility>

namespace fracwave {

namespace detail {
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
} // namespace detail

class CounterRng {
public:
    CounterRng(uint64_t master_seed, uint64_t stream_id)
        : key_(detail::splitmix64(detail::splitmix64(master_seed) ^
                                  (0x9e3779b97f4a7c15ULL * (stream_id + 1)))) {}

    // Uniform in (0, 1), open at both ends.
    double uniform(uint64_t index) const {
        const uint64_t z = detail::splitmix64(key_ ^ (index * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL));
        return (double(z >> 11) + 0.5) * 0x1.0p-53;
    }

    // Two independent standard normals from the uniforms at (2i, 2i+1).
    std::pair<double, double> normal_pair(uint64_t index) const {
        const double u1 = uniform(2 * index);
        const double u2 = uniform(2 * index + 1);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * M_PI * u2;
        return {r * std::cos(th), r * std::sin(th)};
    }

    uint64_t key() const { return key_; }

private:
    uint64_t key_;
};

// Derive a stream id from small integer tags (experiment kind, n, point index...).
inline uint64_t stream_id(uint64_t tag, uint64_t a = 0, uint64_t b = 0, uint64_t c = 0) {
    uint64_t s = detail::splitmix64(tag);
    s = detail::splitmix64(s ^ (a * 0x9e3779b97f4a7c15ULL + 1));
    s = detail::splitmix64(s ^ (b * 0xc2b2ae3d27d4eb4fULL + 2));
    s = detail::splitmix64(s ^ (c * 0x165667b19e3779f9ULL + 3));
    return s;
}

} // namespace fracwave
