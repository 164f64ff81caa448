#include "smoothwave/expsum.hpp"

#include <algorithm>
#include <cmath>

#include "smoothwave/errors.hpp"
#include "smoothwave/primes.hpp"

namespace smoothwave {

namespace {

constexpr double kWeightSlack = 1.0 + 1e-9;

void check_weights(const SmoothSet& set, std::span<const cdouble> weights) {
    if (weights.empty()) return;
    if (weights.size() < set.x + 1)
        throw_invalid("weights array must cover every n <= x");
    for (uint32_t n : set.members) {
        if (std::abs(weights[n]) > kWeightSlack)
            throw_invalid("weight modulus exceeds 1 at n = " + std::to_string(n));
    }
}

}  // namespace

cdouble exp_sum(const SmoothSet& set, double theta, std::span<const cdouble> weights) {
    check_weights(set, weights);
    KahanSum re, im;
    for (uint32_t n : set.members) {
        cdouble ph = unit_phase(static_cast<long double>(n) * theta);
        if (!weights.empty()) ph *= weights[n];
        re.add(ph.real());
        im.add(ph.imag());
    }
    return {re.value(), im.value()};
}

cdouble geometric_sum(uint64_t m, double beta) {
    if (m == 0) return {0.0, 0.0};
    double r = std::remainder(beta, 1.0);  // reduced to [-1/2, 1/2]
    double s = std::sin(kTwoPi * 0.5 * r);
    if (std::abs(s) < 1e-12) {
        // Near-rational phase: direct summation is both exact enough and rare.
        KahanSum re, im;
        for (uint64_t k = 1; k <= m; ++k) {
            cdouble ph = unit_phase(static_cast<long double>(k) * r);
            re.add(ph.real());
            im.add(ph.imag());
        }
        return {re.value(), im.value()};
    }
    // sum_{k=1}^{m} e(kr) = e(r(m+1)/2) sin(pi r m)/sin(pi r)
    double num = std::sin(kTwoPi * 0.5 * r * static_cast<double>(m));
    cdouble centre = unit_phase(0.5L * static_cast<long double>(r) * static_cast<long double>(m + 1));
    return centre * (num / s);
}

std::vector<cdouble> coeff_grid(std::span<const cdouble> coeffs, uint64_t n_grid) {
    if (!is_pow2(n_grid)) throw_invalid("coeff_grid: grid size must be a power of two");
    std::vector<cdouble> a(n_grid, cdouble{0.0, 0.0});
    for (size_t n = 0; n < coeffs.size(); ++n) a[n % n_grid] += coeffs[n];
    fft_pow2(a, +1);
    return a;
}

ExpSumGrid exp_sum_grid(const SmoothSet& set, uint64_t n_grid) {
    if (n_grid < 1) throw_invalid("exp_sum_grid: N must be >= 1");
    if (!is_pow2(n_grid)) throw_invalid("exp_sum_grid: N must be a power of two");
    if (n_grid > (1ull << 28)) throw_resource_limit("exp_sum_grid: N exceeds the memory ceiling");

    std::vector<cdouble> a(n_grid, cdouble{0.0, 0.0});
    for (uint32_t n : set.members) a[n % n_grid] += 1.0;
    fft_pow2(a, +1);

    // Real coefficients: pin the conjugate symmetry exactly.
    for (uint64_t k = 1; k < n_grid - k; ++k) a[n_grid - k] = std::conj(a[k]);
    a[0] = cdouble{a[0].real(), 0.0};
    if (n_grid % 2 == 0 && n_grid > 1) a[n_grid / 2] = cdouble{a[n_grid / 2].real(), 0.0};

    ExpSumGrid g;
    g.n_grid = n_grid;
    g.x = set.x;
    g.y = set.y;
    g.values = std::move(a);
    return g;
}

cdouble v_major(const SmoothSet& set, uint64_t q, double delta, VMode mode) {
    if (q < 1) throw_invalid("v_major: q must be >= 1");
    if (mode == VMode::Definition) {
        // Group by n mod q: mu(q/(q,n))/phi(q/(q,n)) depends only on the class.
        std::vector<double> coef(q);
        for (uint64_t r = 0; r < q; ++r) {
            uint64_t g = gcd_u64(q, r == 0 ? q : r);
            uint64_t qg = q / g;
            coef[r] = static_cast<double>(moebius(qg)) / static_cast<double>(euler_phi(qg));
        }
        KahanSum re, im;
        for (uint32_t n : set.members) {
            cdouble ph = unit_phase(static_cast<long double>(n) * delta);
            double c = coef[n % q];
            re.add(c * ph.real());
            im.add(c * ph.imag());
        }
        return {re.value(), im.value()};
    }
    // Decomposed route: sum_{h|q} mu(q/h)/phi(q/h) sum_{d|(q/h)} mu(d)
    //                   sum_{n <= x/dh, smooth} e(n dh delta).
    // h and d are divisors of a smooth n, hence y-smooth themselves; the
    // restriction keeps the identity exact even for q with a prime factor > y.
    auto smooth_divisor = [&](uint64_t v) {
        for (const auto& [p, e] : factorize(v).factors)
            if (p > set.y) return false;
        return true;
    };
    cdouble total{0.0, 0.0};
    for (uint64_t h : divisors(q)) {
        if (!smooth_divisor(h)) continue;
        uint64_t qh = q / h;
        double outer = static_cast<double>(moebius(qh)) / static_cast<double>(euler_phi(qh));
        if (outer == 0.0) continue;
        for (uint64_t d : divisors(qh)) {
            int mu_d = moebius(d);
            if (mu_d == 0) continue;
            if (!smooth_divisor(d)) continue;
            uint64_t cutoff = set.x / (d * h);
            KahanSum re, im;
            for (uint32_t n : set.members) {
                if (n > cutoff) break;
                cdouble ph = unit_phase(static_cast<long double>(n) *
                                        static_cast<long double>(d * h) * delta);
                re.add(ph.real());
                im.add(ph.imag());
            }
            total += outer * static_cast<double>(mu_d) * cdouble{re.value(), im.value()};
        }
    }
    return total;
}

cdouble v_major(uint64_t x, uint64_t y, uint64_t q, double delta, VMode mode) {
    return v_major(sieve_smooth(x, y), q, delta, mode);
}

cdouble v_complete(uint64_t x, uint64_t q, double delta) {
    if (q < 1) throw_invalid("v_complete: q must be >= 1");
    cdouble total{0.0, 0.0};
    for (uint64_t r = 0; r < q; ++r) {
        uint64_t g = gcd_u64(q, r == 0 ? q : r);
        uint64_t qg = q / g;
        int mu = moebius(qg);
        if (mu == 0) continue;
        double c = static_cast<double>(mu) / static_cast<double>(euler_phi(qg));
        // n = r + kq <= x, n >= 1
        uint64_t first = (r == 0) ? q : r;
        if (first > x) continue;
        uint64_t count = (x - first) / q + 1;
        // sum_k e((first + kq) delta), k = 0..count-1
        cdouble base = unit_phase(static_cast<long double>(first) * delta);
        cdouble tail = (count > 1) ? geometric_sum(count - 1, static_cast<double>(q) * delta)
                                   : cdouble{0.0, 0.0};
        total += c * base * (cdouble{1.0, 0.0} + tail);
    }
    return total;
}

VerificationRecord major_arc_compare(const SmoothSet& set, uint64_t q, double delta, double alpha) {
    if (q < 1) throw_invalid("major_arc_compare: q must be >= 1");
    const double x = static_cast<double>(set.x);
    const double psi = static_cast<double>(set.psi);
    const double logy = std::log(static_cast<double>(set.y));
    const double u = std::log(x) / logy;
    const double dx = std::abs(delta) * x;

    cdouble v_xy = v_major(set, q, delta, VMode::Definition);
    cdouble v_xx = v_complete(set.x, q, delta);
    double lhs = std::abs(v_xy - (psi / x) * v_xx);

    double qd = static_cast<double>(q);
    double rhs = psi * (std::log(u + 1.0) / logy) *
                 (std::pow(2.0, omega(q)) * std::pow(qd, 1.0 - alpha) *
                  std::pow(std::log(qd + 1.0), 2.0) / static_cast<double>(euler_phi(q))) *
                 std::pow(std::log(2.0 + dx), 3.0) / std::pow(1.0 + dx, alpha);

    // Checkable hypothesis parts: q <= y^(1/4) and |delta x| <= y^(1/4);
    // the paper-level constants in the (c1, c2) ranges are not effective.
    double y_quarter = std::pow(static_cast<double>(set.y), 0.25);
    bool hyp = qd <= y_quarter && dx <= y_quarter && set.y <= set.x;

    return make_record({{"x", x},
                        {"y", static_cast<double>(set.y)},
                        {"q", qd},
                        {"delta", delta},
                        {"alpha", alpha}},
                       lhs, rhs, hyp);
}

namespace {

// Riemann sum of |grid values|^p / N over a stride-subsampled grid.
double riemann_pth_moment(const std::vector<cdouble>& grid, double p, uint64_t stride) {
    KahanSum acc;
    const uint64_t n = grid.size();
    for (uint64_t a = 0; a < n; a += stride) {
        double s2 = std::norm(grid[a]);
        acc.add(s2 == 0.0 ? 0.0 : std::pow(s2, 0.5 * p));
    }
    return acc.value() / (static_cast<double>(n) / static_cast<double>(stride));
}

MomentEstimate moment_impl(std::span<const cdouble> coeffs, uint64_t max_n, double p,
                           uint64_t n_grid) {
    if (p < 2.0) throw_out_of_range("moment: p must be >= 2");
    uint64_t base = n_grid == 0 ? next_pow2(8 * std::max<uint64_t>(max_n, 1)) : next_pow2(n_grid);

    bool p_even_int = std::abs(p - std::round(p)) == 0.0 && (static_cast<uint64_t>(p) % 2 == 0);
    uint64_t exact_need = (static_cast<uint64_t>(p) / 2) * max_n + 1;
    bool exact = p_even_int && base >= exact_need;

    MomentEstimate est;
    est.p = p;
    est.exact = exact;
    if (exact) {
        auto grid = coeff_grid(coeffs, base);
        est.value = riemann_pth_moment(grid, p, 1);
        est.n_grid = base;
        est.refinement_gap = 0.0;
        return est;
    }
    // One FFT at 2N serves both Riemann sums: the N-point sum is the
    // even-indexed subsample.
    auto grid = coeff_grid(coeffs, 2 * base);
    double coarse = riemann_pth_moment(grid, p, 2);
    double fine = riemann_pth_moment(grid, p, 1);
    est.value = fine;
    est.n_grid = 2 * base;
    est.refinement_gap = std::abs(fine - coarse);
    return est;
}

}  // namespace

MomentEstimate moment(const SmoothSet& set, double p, std::span<const cdouble> weights,
                      uint64_t n_grid) {
    check_weights(set, weights);
    std::vector<cdouble> coeffs(set.x + 1, cdouble{0.0, 0.0});
    for (uint32_t n : set.members)
        coeffs[n] = weights.empty() ? cdouble{1.0, 0.0} : weights[n];
    return moment_impl(coeffs, set.x, p, n_grid);
}

MomentEstimate moment_of_coeffs(std::span<const cdouble> coeffs, double p, uint64_t n_grid) {
    uint64_t max_n = coeffs.empty() ? 1 : coeffs.size() - 1;
    return moment_impl(coeffs, max_n, p, n_grid);
}

}  // namespace smoothwave
