#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "smoothwave/records.hpp"
#include "smoothwave/smooth_core.hpp"

namespace smoothwave {

enum class CountMethod { Convolution, BruteForce };

// N(x,y) = #{(a,b,c) in S(y)^3 : a+b = c <= x} against Psi^3/(2x).
struct AbcCount {
    uint64_t x = 0;
    uint64_t y = 0;
    uint64_t exact = 0;
    double predicted = 0.0;  // Psi(x,y)^3 / (2x)
    double ratio = 0.0;
    CountMethod method = CountMethod::Convolution;
};
AbcCount abc_count(const SmoothSet& set, CountMethod method = CountMethod::Convolution);

// Pair-sum representation counts r(c) = #{(a,b) in S^2 : a+b = c}, c <= 2x.
std::vector<int64_t> abc_pair_counts(const SmoothSet& set, CountMethod method);

// Re integral of S^2 conj(S) over the grid, split across the major arcs M(R).
struct CircleSplit {
    double major = 0.0;
    double minor = 0.0;
    double total = 0.0;
    double major_fraction = 0.0;
};
CircleSplit circle_split(const SmoothSet& set, uint64_t R, uint64_t grid_n);

// Three-term progressions (b, b+d, b+2d) in B^3 with d > 0, each counted once.
uint64_t count_3aps(std::span<const uint32_t> b_set);

// The transference experiment: N = least prime > 2x, nu the scaled smooth
// indicator on Z/N, f the scaled indicator of B.
enum class RothSelector { Full, Prefix, Random };
struct RothReport {
    uint64_t b_size = 0;
    double beta = 0.0;
    uint64_t ap_count = 0;        // integer progressions, d > 0
    uint64_t ap_count_mod_n = 0;  // progressions of Z/N, same convention
    double eta = 0.0;             // max_{a != 0} |nu_hat(a)| / N
    double moment_m = 0.0;        // sum_a |f_hat(a)/N|^{2.1}
    uint64_t n_modulus = 0;
    double lower_bound_scale = 0.0;  // Psi(N,y)^3 / N
    double transference_ratio = 0.0;
};
RothReport roth_experiment(uint64_t x, uint64_t y, RothSelector selector, double beta,
                           uint64_t seed = 0, const std::vector<uint32_t>* explicit_b = nullptr);

// Marcinkiewicz-Zygmund comparison: discrete p-th mean over Z/N vs the
// continuous moment, on the indicator of B.
VerificationRecord mz_check(std::span<const uint32_t> b_set, uint64_t n_modulus, double p);

}  // namespace smoothwave
