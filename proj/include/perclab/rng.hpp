#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace perc {

// Counter-based stream derivation: a master seed plus an (experiment, trial)
// pair is hashed into the state of a xoshiro256++ generator, so every trial
// owns an independent reproducible stream regardless of thread scheduling.

inline uint64_t splitmix64(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t hash_str(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

class Rng {
public:
    Rng() : Rng(0) {}

    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& w : s_) w = splitmix64(x);
    }

    Rng(uint64_t master, uint64_t stream, uint64_t index) {
        uint64_t x = master;
        x ^= 0x9e3779b97f4a7c15ULL + splitmix64(stream);
        uint64_t y = x ^ (0xd1b54a32d192ed03ULL * (index + 1));
        for (auto& w : s_) w = splitmix64(y);
    }

    uint64_t next_u64() {
        uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // 53-bit mantissa uniform in [0,1)
    double next_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool next_bool() { return (next_u64() >> 63) != 0; }

    bool bernoulli(double p) { return next_real() < p; }

    // strictly positive exponential variate, rate 1
    double exponential() {
        double u = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        return -std::log(u);
    }

    // uniform integer in [0, n)
    uint64_t next_below(uint64_t n) {
        // rejection to avoid modulo bias
        uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

private:
    static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
    uint64_t s_[4];
};

// Stream ids for the named experiments; kept stable so that manifests replay.
inline Rng derive_rng(uint64_t master, std::string_view experiment, uint64_t trial) {
    return Rng(master, hash_str(experiment), trial);
}

} // namespace perc
