#ifndef LPIM_RNG_HPP
#define LPIM_RNG_HPP

#include <cstdint>

namespace lpim::rng {

// splitmix64 finalizer; all stream derivation goes through this so results
// are independent of execution order and worker count.
inline std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    return mix(a ^ mix(b));
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix(mix(a, b), c);
}

// Counter-based stream: value i is mix(key, i). Substreams derived from a
// key never collide with the key's own sequence in practice (64-bit mix).
class Stream {
public:
    explicit Stream(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() { return mix(key_, counter_++); }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [0, n); modulo bias is ~n/2^64, irrelevant at these scales
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    bool bernoulli(double p) { return next_double() < p; }

    Stream substream(std::uint64_t tag) const { return Stream(mix(key_, tag)); }
    Stream substream(std::uint64_t tag1, std::uint64_t tag2) const {
        return Stream(mix(key_, tag1, tag2));
    }

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// One coin per undirected edge per stream key: hash of (key, min, max).
// simulate_ic and live_edge_snapshot share this, which couples a cascade to
// the snapshot drawn from the same key.
inline bool edge_coin(std::uint64_t key, int i, int j, double p) {
    if (j < i) { int t = i; i = j; j = t; }
    std::uint64_t h = mix(key, (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j));
    return static_cast<double>(h >> 11) * 0x1.0p-53 < p;
}

} // namespace lpim::rng

#endif
