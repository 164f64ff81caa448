#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "smoothwave/fft.hpp"
#include "smoothwave/records.hpp"
#include "smoothwave/smooth_core.hpp"

namespace smoothwave {

// S(theta) = sum_{n in set} a_n e(n theta) by direct compensated summation.
// weights, when present, is indexed by n (size >= x+1) with |a_n| <= 1;
// entries at non-smooth n are ignored.
cdouble exp_sum(const SmoothSet& set, double theta, std::span<const cdouble> weights = {});

// sum_{k=1}^{m} e(k beta), closed form away from beta = 0 mod 1.
cdouble geometric_sum(uint64_t m, double beta);

// S(a/N) for a = 0..N-1 via one radix-2 FFT; N must be a power of two.
// Conjugate symmetry values[N-a] = conj(values[a]) is enforced exactly.
struct ExpSumGrid {
    uint64_t n_grid = 0;
    uint64_t x = 0;
    uint64_t y = 0;
    std::vector<cdouble> values;
};
ExpSumGrid exp_sum_grid(const SmoothSet& set, uint64_t n_grid);

// Grid of sum_n c_n e(na/N) for an arbitrary coefficient array indexed by n;
// coefficients fold mod N when N <= max index. Power-of-two N only.
std::vector<cdouble> coeff_grid(std::span<const cdouble> coeffs, uint64_t n_grid);

// Major-arc model V(x,y;q,delta) = sum_{n<=x smooth} mu(q/(q,n))/phi(q/(q,n)) e(n delta).
enum class VMode { Definition, Decomposed };
cdouble v_major(const SmoothSet& set, uint64_t q, double delta, VMode mode = VMode::Definition);
cdouble v_major(uint64_t x, uint64_t y, uint64_t q, double delta, VMode mode = VMode::Definition);

// V(x,x;q,delta): the same sum over the complete interval, evaluated per
// residue class with closed-form geometric sums.
cdouble v_complete(uint64_t x, uint64_t q, double delta);

// |V(x,y;q,d) - (Psi/x) V(x,x;q,d)| against the major-arc error shape
// Psi * (log(u+1)/log y) * (2^omega(q) q^(1-alpha) log^2(q+1)/phi(q))
//     * log^3(2+|dx|)/(1+|dx|)^alpha.
VerificationRecord major_arc_compare(const SmoothSet& set, uint64_t q, double delta, double alpha);

// Riemann-sum moment of |sum a_n e(n theta)|^p over [0,1]. For even p with
// n_grid >= (p/2)x + 1 the sum is the exact integral (trig polynomial);
// otherwise sums at N and 2N are compared and the finer value returned.
struct MomentEstimate {
    double p = 0.0;
    double value = 0.0;
    uint64_t n_grid = 0;  // finest grid actually used
    bool exact = false;
    double refinement_gap = 0.0;  // |value_N - value_2N|, 0 when exact
};
MomentEstimate moment(const SmoothSet& set, double p, std::span<const cdouble> weights = {},
                      uint64_t n_grid = 0);
// Same on a raw coefficient array indexed by n = 0..len-1.
MomentEstimate moment_of_coeffs(std::span<const cdouble> coeffs, double p, uint64_t n_grid = 0);

}  // namespace smoothwave
