#include "smoothwave/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "smoothwave/errors.hpp"
#include "smoothwave/primes.hpp"

namespace smoothwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

// sum_{p <= y} log p / (p^a - 1) - log x, and its derivative in a.
double saddle_f(double a, uint64_t y, double logx, const std::vector<uint32_t>& primes) {
    double s = 0.0;
    for (uint32_t p : primes) {
        if (p > y) break;
        double lp = std::log(static_cast<double>(p));
        s += lp / std::expm1(a * lp);
    }
    return s - logx;
}

double saddle_fprime(double a, uint64_t y, const std::vector<uint32_t>& primes) {
    double s = 0.0;
    for (uint32_t p : primes) {
        if (p > y) break;
        double lp = std::log(static_cast<double>(p));
        double em = std::expm1(a * lp);      // p^a - 1
        double pa = em + 1.0;                // p^a
        s -= lp * lp * pa / (em * em);
    }
    return s;
}

}  // namespace

SaddlePoint solve_alpha(double x, uint64_t y, double tol) {
    if (!(x > 1.0)) throw_invalid("solve_alpha: x must be > 1");
    if (y < 2) throw_invalid("solve_alpha: y must be >= 2");
    if (!(tol > 0.0)) throw_invalid("solve_alpha: tol must be > 0");

    auto primes = prime_cache(y);
    const double logx = std::log(x);

    // Bracket [lo, hi] with f(lo) > 0 > f(hi); expand if the defaults miss.
    double lo = 1e-6, hi = 10.0;
    while (saddle_f(lo, y, logx, *primes) < 0.0 && lo > 1e-300) lo *= 0.5;
    while (saddle_f(hi, y, logx, *primes) > 0.0 && hi < 1e6) hi *= 2.0;

    for (int it = 0; it < 200 && hi - lo > 1e-3; ++it) {
        double mid = 0.5 * (lo + hi);
        if (saddle_f(mid, y, logx, *primes) > 0.0)
            lo = mid;
        else
            hi = mid;
    }

    double a = 0.5 * (lo + hi);
    double fa = saddle_f(a, y, logx, *primes);
    for (int it = 0; it < 100; ++it) {
        if (std::abs(fa) <= tol) break;
        double step = fa / saddle_fprime(a, y, *primes);
        double next = a - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // fall back to bisection
        double fn = saddle_f(next, y, logx, *primes);
        if (fn > 0.0)
            lo = next;
        else
            hi = next;
        a = next;
        fa = fn;
    }
    if (std::abs(fa) > tol)
        throw_numeric("solve_alpha: residual " + std::to_string(fa) + " above tolerance");

    SaddlePoint sp;
    sp.x = x;
    sp.y = y;
    sp.alpha = a;
    sp.residual = fa;
    sp.u = logx / std::log(static_cast<double>(y));
    return sp;
}

double alpha_approx(double x, uint64_t y) {
    double logx = std::log(x);
    double logy = std::log(static_cast<double>(y));
    if (!(static_cast<double>(y) > logx)) throw_out_of_range("alpha_approx: requires y > log x");
    double u = logx / logy;
    return 1.0 - std::log(u * std::log(u + 1.0)) / logy;
}

double zeta_partial(double s, uint64_t y) {
    if (!(s > 0.0)) throw_out_of_range("zeta_partial: s must be > 0");
    if (y < 2) throw_invalid("zeta_partial: y must be >= 2");
    auto primes = prime_cache(y);
    double log_prod = 0.0;
    for (uint32_t p : *primes) {
        if (p > y) break;
        log_prod -= std::log1p(-std::pow(static_cast<double>(p), -s));
    }
    return std::exp(log_prod);
}

double ht_estimate(double x, uint64_t y) {
    if (!(x >= static_cast<double>(y)) || y < 2) throw_invalid("ht_estimate: requires x >= y >= 2");
    SaddlePoint sp = solve_alpha(x, y, 1e-12);
    double logx = std::log(x);
    double logy = std::log(static_cast<double>(y));
    double disc = 2.0 * kPi * (1.0 + logx / static_cast<double>(y)) * logx * logy;
    return std::pow(x, sp.alpha) * zeta_partial(sp.alpha, y) / (sp.alpha * std::sqrt(disc));
}

double DickmanTable::rho(double u) const {
    if (u < 0.0) throw_out_of_range("dickman rho: u must be >= 0");
    if (u > u_max) throw_out_of_range("dickman rho: u above table u_max");
    if (u <= 1.0) return 1.0;
    double k = u / h;
    size_t k0 = static_cast<size_t>(k);
    if (k0 + 1 >= values.size()) return values.back();
    double frac = k - static_cast<double>(k0);
    return values[k0] * (1.0 - frac) + values[k0 + 1] * frac;
}

DickmanTable build_dickman_table(double h, double u_max) {
    if (!(h > 0.0) || !(u_max >= 1.0)) throw_invalid("build_dickman_table: bad parameters");
    const uint64_t m = static_cast<uint64_t>(std::llround(1.0 / h));
    if (std::abs(m * h - 1.0) > 1e-12) throw_invalid("build_dickman_table: h must divide 1");

    DickmanTable t;
    t.h = h;
    t.u_max = u_max;
    const uint64_t steps = static_cast<uint64_t>(std::ceil(u_max / h)) + 1;
    t.values.assign(steps + 1, 1.0);  // rho = 1 on [0, 1]

    // t_k rho_k = h (rho_{k-m}/2 + T_k + rho_k/2) with the window sum
    // T_k = sum_{j=k-m+1}^{k-1} rho_j, solved for rho_k each step.
    long double window = static_cast<long double>(m - 1);  // T at k = m+1: rho_2..rho_m
    for (uint64_t k = m + 1; k <= steps; ++k) {
        long double tk = static_cast<long double>(k) * h;
        long double rho_k =
            h * (0.5L * t.values[k - m] + window) / (tk - 0.5L * h);
        t.values[k] = static_cast<double>(rho_k);
        window += rho_k - t.values[k - m + 1];
        if ((k & 0xfff) == 0) {
            // Re-sum the window to stop incremental rounding drift.
            long double w = 0.0L;
            for (uint64_t j = k - m + 2; j <= k; ++j) w += t.values[j];
            window = w;
        }
    }
    return t;
}

namespace {
std::once_flag g_dickman_once;
DickmanTable g_dickman;
}  // namespace

double dickman_rho(double u) {
    std::call_once(g_dickman_once, [] { g_dickman = build_dickman_table(); });
    return g_dickman.rho(u);
}

}  // namespace smoothwave
