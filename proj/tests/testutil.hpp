#pragma once

// Shared input generators for the test suites. Everything is seeded and
// deterministic so expected values can be frozen.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "elfstar/dataio.hpp"
#include "elfstar/distrib.hpp"

namespace testutil {

inline uint64_t bits_of(double v) { return std::bit_cast<uint64_t>(v); }
inline double from_bits(uint64_t b) { return std::bit_cast<double>(b); }

inline bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (size_t i = 0; i < a.size(); ++i) {
        if (bits_of(a[i]) != bits_of(b[i])) {
            return false;
        }
    }
    return true;
}

inline std::vector<double> walk(int alpha, size_t n, uint64_t seed,
                                double start = 100.0, double step = 0.05) {
    elfstar::WalkParams p;
    p.alpha = alpha;
    p.length = n;
    p.seed = seed;
    p.start = start;
    p.max_step = step;
    return elfstar::gen_random_walk(p);
}

// Values on a decimal lattice: d * 10^-alpha with d a random integer.
inline std::vector<double> lattice_values(int alpha, size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    double scale = 1.0;
    for (int i = 0; i < alpha; ++i) {
        scale *= 10.0;
    }
    std::uniform_int_distribution<int64_t> d(-4'000'000'000'000LL,
                                             4'000'000'000'000LL);
    std::vector<double> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        out.push_back(static_cast<double>(d(rng)) / scale);
    }
    return out;
}

// Uniform reals; almost all of these have > 14 decimal places, exercising
// the raw (unerased) path.
inline std::vector<double> uniform_values(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-1.0e6, 1.0e6);
    std::vector<double> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        out.push_back(d(rng));
    }
    return out;
}

// Raw 64-bit patterns: NaNs with arbitrary payloads, infinities,
// subnormals, everything.
inline std::vector<double> random_bit_patterns(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        out.push_back(from_bits(rng()));
    }
    return out;
}

inline std::vector<double> special_values(size_t n, uint64_t seed) {
    const double menu[] = {0.0,
                           -0.0,
                           std::numeric_limits<double>::quiet_NaN(),
                           std::numeric_limits<double>::infinity(),
                           -std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::denorm_min(),
                           -std::numeric_limits<double>::denorm_min(),
                           4.9e-324,
                           std::numeric_limits<double>::max(),
                           std::numeric_limits<double>::min(),
                           1.0,
                           -1.0};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, std::size(menu) - 1);
    std::vector<double> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        out.push_back(menu[pick(rng)]);
    }
    return out;
}

// 16-17 significant decimal digits: beta >= 16, which the eraser refuses.
inline std::vector<double> high_beta_values(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int64_t> d(1'000'000'000'000'000LL,
                                             9'007'199'254'740'992LL);
    std::vector<double> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        out.push_back(static_cast<double>(d(rng)) / 1.0e15);
    }
    return out;
}

inline std::vector<double> constant_values(double v, size_t n) {
    return std::vector<double>(n, v);
}

// Minimum approximation cost over every rule with exactly z items drawn
// from {0} + subsets of [1, max_index]; independent of the DP under test.
inline uint64_t brute_min_capp_of_length(const elfstar::CountDistribution& cd,
                                         int max_index, int z) {
    uint64_t best = UINT64_MAX;
    const uint32_t limit = uint32_t(1) << max_index;
    for (uint32_t mask = 0; mask < limit; ++mask) {
        if (std::popcount(mask) != z - 1) {
            continue;
        }
        int items[17];
        int n = 0;
        items[n++] = 0;
        for (int i = 1; i <= max_index; ++i) {
            if (mask & (uint32_t(1) << (i - 1))) {
                items[n++] = i;
            }
        }
        uint64_t capp = 0;
        int slot = 0;
        for (int i = 0; i <= max_index; ++i) {
            while (slot + 1 < n && items[slot + 1] <= i) {
                ++slot;
            }
            capp += cd.count(i) * static_cast<uint64_t>(i - items[slot]);
        }
        best = std::min(best, capp);
    }
    return best;
}

// Random distribution with support inside [lo, hi]; guaranteed nonempty.
inline elfstar::CountDistribution random_distribution(int lo, int hi,
                                                      uint64_t seed,
                                                      uint64_t max_count = 1000) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> idx(lo, hi);
    std::uniform_int_distribution<uint64_t> cnt(1, max_count);
    std::uniform_int_distribution<int> nbuckets(1, hi - lo + 1);
    elfstar::CountDistribution cd;
    int buckets = nbuckets(rng);
    for (int b = 0; b < buckets; ++b) {
        int i = idx(rng);
        uint64_t c = cnt(rng);
        for (uint64_t k = 0; k < c; ++k) {
            cd.add(i);
        }
    }
    return cd;
}

}  // namespace testutil
