#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "smoothwave/expsum.hpp"
#include "smoothwave/records.hpp"
#include "smoothwave/smooth_core.hpp"

namespace smoothwave {

// Dirichlet decomposition theta = a/q + delta on the circle, 0 <= a < q,
// gcd(a,q) = 1 (a = 0 forces q = 1), |delta| <= 1/(q Qmax).
struct RationalArc {
    uint64_t a = 0;
    uint64_t q = 1;
    double delta = 0.0;
    double theta = 0.0;
};
RationalArc dirichlet_decompose(double theta, uint64_t q_max);

// Minor arc bound shape
//   Psi/sqrt(qL) * (qL)^{(3/2)(1-alpha)} * u^{3/2} log u * log x
//     * sqrt(log(2+|dx|) log(qy)),  L = 1+|delta x|,
// with log u clamped to >= 1 for u <= e. hypothesis_ok is the full stated
// regime (empty at desk scale); size_ok drops the asymptotic floor log^3 x <= y.
struct MinorArcBound {
    double value = 0.0;
    bool hypothesis_ok = false;  // q^2 y^3 (1+|dx|)^2 <= x/4 and log^3 x <= y <= x^(1/3)
    bool size_ok = false;        // q^2 y^3 (1+|dx|)^2 <= x/4 and y <= x^(1/3)
};
MinorArcBound minor_arc_bound(double x, uint64_t y, uint64_t q, double delta, double alpha, double psi);

// x(1+|dx|) log^3 x (sqrt(y)/x^(1/4) + 1/sqrt(q) + sqrt(qy/x)), 3 <= y <= sqrt x.
double ft_minor_bound(double x, uint64_t y, uint64_t q, double delta);

// Major arcs M = union over q <= R, (a,q)=1 of [a/q - R/x, a/q + R/x].
bool in_major_arcs(double theta, uint64_t R, double x);
// Largest R whose union still has measure < 1/2 (the paper's log^20 x
// exceeds x at desk scale, so scans cap R here).
uint64_t major_arc_cap(uint64_t x);

// Grid scan of |S(theta)|/Psi off the major arcs vs 1/log^5 x; also reports
// whether the top-20 grid maxima of |S| all land inside M.
struct ScanReport {
    VerificationRecord record;
    bool top20_inside_major = false;
    std::vector<double> top_thetas;  // decreasing |S|
};
ScanReport minor_arc_scan(const SmoothSet& set, uint64_t R, uint64_t grid_n);

// Greedy maximal 1/x-separated family of grid points with |S| >= delta Psi,
// in decreasing |S| order, plus the two large-values bound shapes
// (epsilon = 0.1, unit constants).
struct LargeValuesReport {
    double delta = 0.0;
    uint64_t r_count = 0;
    std::vector<double> thetas;
    double k_reference = 0.0;  // floor((log x / delta)^10); overflows u64, kept as double
    double bound_smalldelta = 0.0;
    double bound_largedelta = 0.0;
    double alpha = 0.0;
};
LargeValuesReport large_values_count(const SmoothSet& set, std::span<const cdouble> weights,
                                     double delta, uint64_t grid_n);

// Erdos-Turan discrepancy inequality for points of [0,1]:
// lhs = |#{u_n in [a,b] mod 1} - (b-a) N|, rhs = N/(J+1) + 3 sum_{j<=J} |S_j|/j.
VerificationRecord erdos_turan_check(std::span<const double> points, double a, double b,
                                     uint64_t big_j);

// G(theta) = sum_{q <= Q} (1/q) sum_{a=0}^{q-1} 1{||theta-a/q|| <= Delta} / (1 + x||theta-a/q||).
double bourgain_g(double theta, uint64_t big_q, double delta_width, double x);

// sum_{r,s} G(theta_r - theta_s) vs R Q^eps log(1+Dx) + R^2 Q log(1+Dx)/x
// + R^2 log(1+Dx)/Q^A with eps = 0.1, A = 1; thetas must be 1/x-separated.
VerificationRecord bourgain_pair_sum(std::span<const double> thetas, uint64_t big_q,
                                     double delta_width, double x);

}  // namespace smoothwave
