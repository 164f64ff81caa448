#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace smoothwave {

// Deterministic helpers on top of mt19937_64. std::uniform_real_distribution
// is implementation-defined, so randomized suites draw through these instead;
// identical seeds must give byte-identical reports across toolchains.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

inline uint64_t uniform_u64(std::mt19937_64& rng, uint64_t lo, uint64_t hi) {
    // Inclusive range; modulo bias is irrelevant at the sizes used here.
    return lo + rng() % (hi - lo + 1);
}

// Complex weight with |a| <= 1: uniform modulus and phase.
inline std::complex<double> unit_disc_weight(std::mt19937_64& rng) {
    double r = uniform01(rng);
    double phi = 6.283185307179586476925286766559 * uniform01(rng);
    return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace smoothwave
