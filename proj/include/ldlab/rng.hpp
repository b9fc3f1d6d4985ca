// rng.hpp -- deterministic randomness.
//
// Every sample in the library is drawn through Rng so that a
// (master seed, stream name, trial index) triple pins each experiment's
// output byte for byte, independent of platform and thread schedule.
// std::mt19937_64 is fully specified by the standard; the integer
// reductions below avoid std::uniform_int_distribution, which is not.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace ldlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// per-trial seed = hash(master seed, stream name, trial index)
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view stream,
                                 std::uint64_t index) {
    const std::uint64_t base = splitmix64(splitmix64(master) ^ fnv1a64(stream));
    return splitmix64(base + index);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // uniform in [0, bound), unbiased rejection sampling
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
        if ((bound & (bound - 1)) == 0) return next() & (bound - 1);
        const std::uint64_t rem =
            (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
        for (;;) {
            const std::uint64_t v = next();
            if (v <= limit) return v % bound;
        }
    }

    bool bernoulli(double p) {
        return static_cast<double>(below(1ull << 53)) * 0x1p-53 < p;
    }

    // uniform k-subset of {0,...,n-1}, returned sorted
    std::vector<std::size_t> subset(std::size_t n, std::size_t k) {
        if (k > n) throw std::invalid_argument("Rng::subset: k > n");
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(below(n - i));
            std::swap(pool[i], pool[j]);
        }
        std::vector<std::size_t> out(pool.begin(), pool.begin() + k);
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace ldlab
