#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "smotfs/types.hpp"

namespace smotfs {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Independent substream seed for (master, point, trial, ...).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) noexcept {
    std::uint64_t h = mix64(master);
    for (auto k : keys) h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
    return h;
}

/// Circularly-symmetric CN(0, variance).
inline Complex complex_gaussian(Rng& rng, double variance) {
    std::normal_distribution<double> g(0.0, 1.0);
    const double sd = std::sqrt(variance / 2.0);
    const double re = g(rng);
    const double im = g(rng);
    return {sd * re, sd * im};
}

inline CVector complex_gaussian_vector(Rng& rng, Eigen::Index n, double variance) {
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = complex_gaussian(rng, variance);
    return v;
}

inline Bits random_bits(Rng& rng, int n) {
    Bits b(static_cast<std::size_t>(n));
    for (auto& bit : b) bit = static_cast<std::uint8_t>(rng() >> 63);
    return b;
}

}  // namespace smotfs
