#pragma once

#include <cstdint>
#include <vector>

namespace smoothwave {

// Root of sum_{p <= y} log p / (p^alpha - 1) = log x, with the solver residual.
struct SaddlePoint {
    double x = 0.0;
    uint64_t y = 0;
    double alpha = 0.0;
    double residual = 0.0;
    double u = 0.0;  // (log x) / log y
};

// Bisection bracket then safeguarded Newton; the LHS is strictly decreasing
// in alpha from +inf to 0, so a bracket always exists.
SaddlePoint solve_alpha(double x, uint64_t y, double tol = 1e-12);

// Main term of the classical approximation: 1 - log(u log(u+1)) / log y,
// valid for y > log x.
double alpha_approx(double x, uint64_t y);

// zeta(s, y) = prod_{p <= y} (1 - p^(-s))^(-1) for s > 0.
double zeta_partial(double s, uint64_t y);

// x^alpha zeta(alpha,y) / (alpha sqrt(2 pi (1 + log(x)/y) log x log y)).
double ht_estimate(double x, uint64_t y);

// Dickman rho on a uniform grid, marched through the integral form
// u rho(u) = int_{u-1}^{u} rho(t) dt with implicit trapezoidal panels.
// The step must divide 1 so the kinks at integer u stay on the grid.
struct DickmanTable {
    double h = 0.0;
    double u_max = 0.0;
    std::vector<double> values;  // rho(k*h), k = 0..K

    double rho(double u) const;  // linear interpolation between grid points
};

// Default step 2^-12; the trapezoidal bias at rho(2) is ~2e-10 with this step.
inline constexpr double kDickmanDefaultStep = 0x1.0p-12;

DickmanTable build_dickman_table(double h = kDickmanDefaultStep, double u_max = 20.0);

// Shared default table (u_max = 20).
double dickman_rho(double u);

}  // namespace smoothwave
