#pragma once

#include <cstdint>
#include <initializer_list>

namespace cmi {

// splitmix64 finalizer (Sebastiano Vigna, public domain); bijective on u64.
inline uint64_t mix64(uint64_t v) {
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
    return v ^ (v >> 31);
}

// Counter-based child-seed derivation. Streams for different paths under the
// same root are decorrelated, so parallel consumers can each derive their own
// seed instead of sharing a generator.
inline uint64_t derive_seed(uint64_t root, std::initializer_list<uint64_t> path) {
    uint64_t h = mix64(root + 0x9e3779b97f4a7c15ull);
    for (uint64_t key : path)
        h = mix64(h + 0x9e3779b97f4a7c15ull * (key + 1));
    return h;
}

// xoshiro256++ (Vigna/Blackman, public domain). Chosen over std engines so
// that streams are identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t st = seed;
        for (auto& w : s_) {
            st += 0x9e3779b97f4a7c15ull;
            w = mix64(st);
        }
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0,1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on {0, ..., bound-1}, unbiased via rejection.
    uint64_t below(uint64_t bound) {
        const uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

private:
    static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    uint64_t s_[4];
};

} // namespace cmi
