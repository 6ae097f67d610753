#ifndef GRIDTEST_RNG_HPP
#define GRIDTEST_RNG_HPP

#include <cstdint>
#include <numeric>
#include <vector>

namespace gridtest {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// xoshiro256** seeded via splitmix64. Self-contained so that streams are
/// reproducible across platforms and standard-library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 1) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    /// Independent stream for trial `index` of a master seed.
    static Rng for_trial(std::uint64_t master_seed, std::uint64_t index) {
        std::uint64_t sm = master_seed;
        std::uint64_t a = splitmix64(sm);
        sm = a ^ (index * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
        return Rng(splitmix64(sm));
    }

    std::uint64_t next_u64() {
        std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, n), n >= 1. Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

    /// Uniform permutation of {0,...,s-1}.
    std::vector<std::uint8_t> permutation(int s) {
        std::vector<std::uint8_t> p(s);
        std::iota(p.begin(), p.end(), 0);
        shuffle(p);
        return p;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

} // namespace gridtest

#endif
