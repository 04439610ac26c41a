#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <vector>

namespace plugsi {

// All randomness flows through mt19937_64 plus the helpers below. The standard
// distributions are implementation-defined, so sampling is done by hand to keep
// results identical across toolchains.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Fold a base seed with context words (batch index, view tag, ...) into an
/// independent sub-seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = splitmix64(seed);
    for (std::uint64_t w : words) h = splitmix64(h ^ w);
    return h;
}

using Rng = std::mt19937_64;

/// Uniform double in [0, 1).
inline double uniform01(Rng& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform(Rng& g, double lo, double hi) { return lo + (hi - lo) * uniform01(g); }

/// Unbiased integer in [0, n) by rejection.
inline std::uint64_t uniform_index(Rng& g, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = g();
    } while (x >= limit);
    return x % n;
}

/// Standard normal via Box-Muller (the cosine branch only, one draw per call).
inline double normal01(Rng& g) {
    double u1 = 1.0 - uniform01(g);  // (0, 1]
    double u2 = uniform01(g);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

/// k distinct indices out of [0, n), by partial Fisher-Yates. Order of the
/// result is the draw order, not sorted.
inline std::vector<std::size_t> sample_without_replacement(Rng& g, std::size_t n, std::size_t k) {
    if (k > n) throw std::invalid_argument("sample_without_replacement: k > n");
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(uniform_index(g, n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace plugsi
