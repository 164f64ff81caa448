#include "smoothwave/bound_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "smoothwave/errors.hpp"
#include "smoothwave/primes.hpp"
#include "smoothwave/saddle.hpp"

namespace smoothwave {

namespace {

double circle_dist(double t) {
    double r = t - std::floor(t);
    return std::min(r, 1.0 - r);
}

}  // namespace

RationalArc dirichlet_decompose(double theta, uint64_t q_max) {
    if (q_max < 1) throw_invalid("dirichlet_decompose: Qmax must be >= 1");
    long double t = theta - std::floor(theta);  // reduce to [0,1)

    // Continued fraction convergents p/q of t; keep the last with q <= Qmax.
    // That convergent satisfies |t - p/q| <= 1/(q q_next) < 1/(q Qmax).
    uint64_t p_prev = 1, q_prev = 0;  // h_{-1}/k_{-1}
    uint64_t p_cur = 0, q_cur = 1;    // h_0/k_0 for a_0 = 0
    long double frac = t;
    for (int it = 0; it < 80; ++it) {
        if (frac <= 1e-18L) break;
        long double inv = 1.0L / frac;
        long double a_f = std::floor(inv);
        // The next denominator a*q_cur + q_prev must stay <= Qmax (this also
        // rules out u64 overflow).
        if (a_f > static_cast<long double>((q_max - q_prev) / q_cur)) break;
        uint64_t a_term = static_cast<uint64_t>(a_f);
        uint64_t q_next = a_term * q_cur + q_prev;
        uint64_t p_next = a_term * p_cur + p_prev;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        frac = inv - a_f;
    }

    RationalArc arc;
    arc.q = q_cur;
    double rational = static_cast<double>(p_cur) / static_cast<double>(q_cur);
    arc.delta = static_cast<double>(t - static_cast<long double>(rational));
    arc.a = p_cur % q_cur;  // p/q = 1/1 maps to 0/1 on the circle
    arc.theta = static_cast<double>(t);
    return arc;
}

MinorArcBound minor_arc_bound(double x, uint64_t y, uint64_t q, double delta, double alpha, double psi) {
    if (q < 1) throw_invalid("minor_arc_bound: q must be >= 1");
    MinorArcBound out;
    const double yd = static_cast<double>(y);
    const double logx = std::log(x);
    const double dx = std::abs(delta) * x;
    const double ql = static_cast<double>(q) * (1.0 + dx);
    const double u = logx / std::log(yd);
    const double logu = std::max(std::log(u), 1.0);  // clamped for u <= e

    out.value = psi / std::sqrt(ql) * std::pow(ql, 1.5 * (1.0 - alpha)) * std::pow(u, 1.5) *
                logu * logx *
                std::sqrt(std::log(2.0 + dx) * std::log(static_cast<double>(q) * yd));

    const double size_lhs =
        static_cast<double>(q) * static_cast<double>(q) * yd * yd * yd * (1.0 + dx) * (1.0 + dx);
    out.size_ok = size_lhs <= x / 4.0 && yd <= std::cbrt(x);
    out.hypothesis_ok = out.size_ok && std::pow(logx, 3.0) <= yd;
    return out;
}

double ft_minor_bound(double x, uint64_t y, uint64_t q, double delta) {
    const double yd = static_cast<double>(y);
    if (!(3.0 <= yd && yd <= std::sqrt(x))) throw_out_of_range("ft_minor_bound: needs 3 <= y <= sqrt x");
    if (q < 1) throw_invalid("ft_minor_bound: q must be >= 1");
    const double logx = std::log(x);
    const double dx = std::abs(delta) * x;
    const double qd = static_cast<double>(q);
    return x * (1.0 + dx) * logx * logx * logx *
           (std::sqrt(yd) / std::pow(x, 0.25) + 1.0 / std::sqrt(qd) + std::sqrt(qd * yd / x));
}

bool in_major_arcs(double theta, uint64_t R, double x) {
    const double width = static_cast<double>(R) / x;
    for (uint64_t q = 1; q <= R; ++q) {
        double qt = static_cast<double>(q) * theta;
        double dist = std::abs(qt - std::round(qt));  // q * ||theta - a/q|| for nearest a
        if (dist <= static_cast<double>(q) * width) return true;
    }
    return false;
}

uint64_t major_arc_cap(uint64_t x) {
    // measure(M) <= sum_{q<=R} phi(q) * 2R/x; grow R until that passes 1/2.
    double acc_phi = 0.0;
    uint64_t r = 1;
    for (; r <= x; ++r) {
        acc_phi += static_cast<double>(euler_phi(r));
        double measure = acc_phi * 2.0 * static_cast<double>(r) / static_cast<double>(x);
        if (measure >= 0.5) break;
    }
    return r > 1 ? r - 1 : 1;
}

ScanReport minor_arc_scan(const SmoothSet& set, uint64_t R, uint64_t grid_n) {
    ExpSumGrid grid = exp_sum_grid(set, grid_n);
    const double x = static_cast<double>(set.x);
    const double psi = static_cast<double>(set.psi);

    double max_outside = 0.0;
    std::vector<std::pair<double, uint64_t>> top;  // (|S|, index), kept small
    const size_t keep = 20;
    for (uint64_t a = 0; a < grid_n; ++a) {
        double mag = std::abs(grid.values[a]);
        double theta = static_cast<double>(a) / static_cast<double>(grid_n);
        if (top.size() < keep || mag > top.back().first) {
            top.emplace_back(mag, a);
            std::sort(top.begin(), top.end(),
                      [](const auto& l, const auto& r) { return l.first > r.first; });
            if (top.size() > keep) top.pop_back();
        }
        if (mag > max_outside && !in_major_arcs(theta, R, x)) max_outside = mag;
    }

    bool all_inside = true;
    std::vector<double> top_thetas;
    for (const auto& [mag, a] : top) {
        double theta = static_cast<double>(a) / static_cast<double>(grid_n);
        top_thetas.push_back(theta);
        if (!in_major_arcs(theta, R, x)) all_inside = false;
    }

    const double logx = std::log(x);
    ScanReport rep;
    rep.record = make_record({{"x", x},
                              {"y", static_cast<double>(set.y)},
                              {"R", static_cast<double>(R)},
                              {"grid_n", static_cast<double>(grid_n)}},
                             max_outside / psi, 1.0 / std::pow(logx, 5.0),
                             static_cast<double>(set.y) <= std::pow(x, 0.01));
    rep.top20_inside_major = all_inside;
    rep.top_thetas = std::move(top_thetas);
    return rep;
}

LargeValuesReport large_values_count(const SmoothSet& set, std::span<const cdouble> weights,
                                     double delta, uint64_t grid_n) {
    if (!(delta > 0.0)) throw_invalid("large_values_count: delta must be > 0");
    if (grid_n < 2 * set.x) throw_invalid("large_values_count: grid must be >= 2x");

    std::vector<cdouble> coeffs(set.x + 1, cdouble{0.0, 0.0});
    for (uint32_t n : set.members)
        coeffs[n] = weights.empty() ? cdouble{1.0, 0.0} : weights[n];
    std::vector<cdouble> values = coeff_grid(coeffs, grid_n);

    const double psi = static_cast<double>(set.psi);
    const double threshold = delta * psi;
    std::vector<std::pair<double, uint64_t>> qualified;
    for (uint64_t a = 0; a < grid_n; ++a) {
        double mag = std::abs(values[a]);
        if (mag >= threshold) qualified.emplace_back(mag, a);
    }
    std::sort(qualified.begin(), qualified.end(), [](const auto& l, const auto& r) {
        if (l.first != r.first) return l.first > r.first;
        return l.second < r.second;
    });

    // Greedy selection, 1/x circle separation enforced against neighbours.
    const double min_sep = 1.0 / static_cast<double>(set.x);
    std::set<uint64_t> chosen;
    const double grid_d = static_cast<double>(grid_n);
    auto far_enough = [&](uint64_t idx) {
        if (chosen.empty()) return true;
        auto it = chosen.lower_bound(idx);
        uint64_t next = (it == chosen.end()) ? *chosen.begin() : *it;
        uint64_t prev = (it == chosen.begin()) ? *chosen.rbegin() : *std::prev(it);
        for (uint64_t nb : {next, prev}) {
            double gap = circle_dist((static_cast<double>(idx) - static_cast<double>(nb)) / grid_d);
            if (gap < min_sep) return false;
        }
        return true;
    };
    for (const auto& [mag, idx] : qualified)
        if (far_enough(idx)) chosen.insert(idx);

    SaddlePoint sp = solve_alpha(static_cast<double>(set.x), set.y, 1e-10);
    const double logx = std::log(static_cast<double>(set.x));
    const double eps = 0.1;
    const double one_minus_alpha = 1.0 - sp.alpha;

    LargeValuesReport rep;
    rep.delta = delta;
    rep.r_count = chosen.size();
    for (const auto& [mag, idx] : qualified)
        if (chosen.count(idx)) rep.thetas.push_back(static_cast<double>(idx) / grid_d);
    rep.k_reference = std::floor(std::pow(logx / delta, 10.0));
    rep.bound_smalldelta = std::pow(delta, -2.0 - 20.0 * one_minus_alpha - eps) *
                           std::pow(logx, 3.0 + 32.0 * one_minus_alpha + eps);
    rep.bound_largedelta = std::pow(delta, -2.0 - 8.0 * one_minus_alpha - eps);
    rep.alpha = sp.alpha;
    return rep;
}

VerificationRecord erdos_turan_check(std::span<const double> points, double a, double b,
                                     uint64_t big_j) {
    if (big_j < 1) throw_invalid("erdos_turan_check: J must be >= 1");
    if (!(a <= b && b <= a + 1.0)) throw_invalid("erdos_turan_check: need a <= b <= a+1");
    const size_t n = points.size();
    const double len = b - a;

    uint64_t inside = 0;
    for (double u : points) {
        double shifted = u - a;
        shifted -= std::floor(shifted);
        if (shifted <= len) ++inside;
    }
    double lhs = std::abs(static_cast<double>(inside) - len * static_cast<double>(n));

    double rhs = static_cast<double>(n) / static_cast<double>(big_j + 1);
    std::vector<cdouble> power(n), base(n);
    for (size_t i = 0; i < n; ++i) {
        base[i] = unit_phase(points[i]);
        power[i] = base[i];
    }
    for (uint64_t j = 1; j <= big_j; ++j) {
        cdouble s{0.0, 0.0};
        for (size_t i = 0; i < n; ++i) {
            s += power[i];
            power[i] *= base[i];
        }
        rhs += 3.0 / static_cast<double>(j) * std::abs(s);
    }
    return make_record({{"n_points", static_cast<double>(n)},
                        {"J", static_cast<double>(big_j)},
                        {"a", a},
                        {"b", b}},
                       lhs, rhs, true);
}

double bourgain_g(double theta, uint64_t big_q, double delta_width, double x) {
    if (big_q < 1) throw_invalid("bourgain_g: Q must be >= 1");
    double total = 0.0;
    for (uint64_t q = 1; q <= big_q; ++q) {
        // Residues with ||theta - a/q|| <= Delta correspond to the integers k
        // within Delta*q of theta*q; walk out from the nearest one on both
        // sides. The distance is monotone along each walk, and at most q
        // residues can qualify (Delta <= 1/2).
        const double qd = static_cast<double>(q);
        const long long a0 = std::llround(theta * qd);
        uint64_t visited = 0;
        for (long long k = a0; visited < q; ++k) {
            double d = std::abs(theta - static_cast<double>(k) / qd);
            if (d > delta_width) break;
            total += 1.0 / (qd * (1.0 + x * d));
            ++visited;
        }
        for (long long k = a0 - 1; visited < q; --k) {
            double d = std::abs(theta - static_cast<double>(k) / qd);
            if (d > delta_width) break;
            total += 1.0 / (qd * (1.0 + x * d));
            ++visited;
        }
    }
    return total;
}

VerificationRecord bourgain_pair_sum(std::span<const double> thetas, uint64_t big_q,
                                     double delta_width, double x) {
    if (!(delta_width >= 1.0 / x && delta_width <= 0.5))
        throw_invalid("bourgain_pair_sum: need 1/x <= Delta <= 1/2");
    const size_t r = thetas.size();
    std::vector<double> sorted(thetas.begin(), thetas.end());
    for (double& t : sorted) t -= std::floor(t);
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i + 1 < r; ++i)
        if (sorted[i + 1] - sorted[i] < 1.0 / x)
            throw_invalid("bourgain_pair_sum: thetas closer than 1/x");
    if (r >= 2 && circle_dist(sorted.back() - sorted.front()) < 1.0 / x)
        throw_invalid("bourgain_pair_sum: thetas closer than 1/x");

    KahanSum acc;
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            acc.add(bourgain_g(thetas[i] - thetas[j], big_q, delta_width, x));

    const double eps = 0.1, big_a = 1.0;
    const double rd = static_cast<double>(r);
    const double qd = static_cast<double>(big_q);
    const double logterm = std::log(1.0 + delta_width * x);
    double rhs = rd * std::pow(qd, eps) * logterm + rd * rd * qd * logterm / x +
                 rd * rd * logterm / std::pow(qd, big_a);
    return make_record({{"R", rd}, {"Q", qd}, {"Delta", delta_width}, {"x", x}}, acc.value(), rhs,
                       true);
}

}  // namespace smoothwave
