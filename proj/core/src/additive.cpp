#include "smoothwave/additive.hpp"

#include <algorithm>
#include <cmath>

#include "smoothwave/bound_lab.hpp"
#include "smoothwave/errors.hpp"
#include "smoothwave/expsum.hpp"
#include "smoothwave/fft.hpp"
#include "smoothwave/primes.hpp"
#include "smoothwave/rng.hpp"

namespace smoothwave {

std::vector<int64_t> abc_pair_counts(const SmoothSet& set, CountMethod method) {
    if (method == CountMethod::BruteForce) {
        if (set.x > 10'000) throw_invalid("abc_pair_counts: brute force limited to x <= 1e4");
        std::vector<int64_t> r(2 * set.x + 1, 0);
        for (uint32_t a : set.members)
            for (uint32_t b : set.members) ++r[static_cast<uint64_t>(a) + b];
        return r;
    }
    std::vector<double> ind(set.x + 1, 0.0);
    for (uint32_t n : set.members) ind[n] = 1.0;
    std::vector<int64_t> conv = self_convolve_integer(ind);  // length 2x+1
    return conv;
}

AbcCount abc_count(const SmoothSet& set, CountMethod method) {
    std::vector<int64_t> r = abc_pair_counts(set, method);
    uint64_t exact = 0;
    for (uint32_t c : set.members) exact += static_cast<uint64_t>(r[c]);

    AbcCount out;
    out.x = set.x;
    out.y = set.y;
    out.exact = exact;
    double psi = static_cast<double>(set.psi);
    out.predicted = psi * psi * psi / (2.0 * static_cast<double>(set.x));
    out.ratio = out.predicted > 0 ? static_cast<double>(exact) / out.predicted : 0.0;
    out.method = method;
    return out;
}

CircleSplit circle_split(const SmoothSet& set, uint64_t R, uint64_t grid_n) {
    if (grid_n < 4 * set.x) throw_invalid("circle_split: grid must be >= 4x");
    ExpSumGrid grid = exp_sum_grid(set, next_pow2(grid_n));
    const uint64_t n = grid.n_grid;
    const double x = static_cast<double>(set.x);

    KahanSum total, major;
    for (uint64_t a = 0; a < n; ++a) {
        const cdouble s = grid.values[a];
        // Re[S^2 conj(S)] = |S|^2 Re(S)
        double term = std::norm(s) * s.real();
        total.add(term);
        double theta = static_cast<double>(a) / static_cast<double>(n);
        if (in_major_arcs(theta, R, x)) major.add(term);
    }
    CircleSplit out;
    out.total = total.value() / static_cast<double>(n);
    out.major = major.value() / static_cast<double>(n);
    out.minor = out.total - out.major;
    out.major_fraction = out.total != 0.0 ? out.major / out.total : 0.0;
    return out;
}

uint64_t count_3aps(std::span<const uint32_t> b_set) {
    if (b_set.empty()) return 0;
    std::vector<uint32_t> sorted(b_set.begin(), b_set.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const uint32_t top = sorted.back();

    std::vector<double> ind(top + 1, 0.0);
    for (uint32_t n : sorted) ind[n] = 1.0;
    std::vector<int64_t> r = self_convolve_integer(ind);  // r[s] = #{b1+b2 = s}

    // sum_{m in B} r(2m) counts (b1, m, b2) with b1 + b2 = 2m; d = 0 terms
    // contribute |B| and each d != 0 progression appears twice.
    uint64_t pairs = 0;
    for (uint32_t m : sorted) pairs += static_cast<uint64_t>(r[2ull * m]);
    return (pairs - sorted.size()) / 2;
}

namespace {

// Cyclic r(s) = #{(n1,n2) in B^2 : n1 + n2 = s mod N} by folding the linear
// self-convolution.
std::vector<int64_t> cyclic_pair_counts(const std::vector<uint32_t>& b, uint64_t n_mod) {
    std::vector<double> ind(n_mod, 0.0);
    for (uint32_t n : b) ind[n % n_mod] += 1.0;
    std::vector<int64_t> lin = self_convolve_integer(ind);
    std::vector<int64_t> out(n_mod, 0);
    for (size_t s = 0; s < lin.size(); ++s) out[s % n_mod] += lin[s];
    return out;
}

}  // namespace

RothReport roth_experiment(uint64_t x, uint64_t y, RothSelector selector, double beta,
                           uint64_t seed, const std::vector<uint32_t>* explicit_b) {
    if (!(beta > 0.0 && beta <= 1.0)) throw_invalid("roth_experiment: beta must be in (0, 1]");
    const uint64_t n_mod = next_prime_above(2 * x);
    if (!(n_mod > 2 * x && n_mod < 4 * x)) throw_numeric("roth_experiment: Bertrand failed?");

    SmoothSet set_n = sieve_smooth(n_mod, y);        // S(y) up to N
    const uint64_t psi_x = set_n.psi_prefix(static_cast<double>(x));
    const double psi_n = static_cast<double>(set_n.psi);

    // Choose B inside S(y) n [1, x].
    std::vector<uint32_t> b;
    const uint64_t need = static_cast<uint64_t>(std::ceil(beta * static_cast<double>(psi_x)));
    std::vector<uint32_t> pool(set_n.members.begin(), set_n.members.begin() + psi_x);
    switch (selector) {
        case RothSelector::Full:
            b = pool;
            break;
        case RothSelector::Prefix:
            b.assign(pool.begin(), pool.begin() + std::min<uint64_t>(need, pool.size()));
            break;
        case RothSelector::Random: {
            std::mt19937_64 rng(seed);
            std::vector<uint32_t> shuffled = pool;
            for (size_t i = shuffled.size(); i > 1; --i)
                std::swap(shuffled[i - 1], shuffled[uniform_u64(rng, 0, i - 1)]);
            shuffled.resize(std::min<uint64_t>(need, shuffled.size()));
            std::sort(shuffled.begin(), shuffled.end());
            b = std::move(shuffled);
            break;
        }
    }
    if (explicit_b) {
        b = *explicit_b;
        std::sort(b.begin(), b.end());
        for (uint32_t n : b)
            if (n < 1 || n > x || !set_n.is_smooth(n))
                throw_invalid("roth_experiment: explicit B must lie in S(y) n [1,x]");
    }
    if (static_cast<double>(b.size()) + 1e-9 < beta * static_cast<double>(psi_x))
        throw_invalid("roth_experiment: selector produced |B| < beta * Psi(x,y)");

    // nu over Z/N with representatives 0..N-1: full DFT via Bluestein (N is
    // prime). n = N itself falls outside the representative range.
    std::vector<cdouble> nu(n_mod, cdouble{0.0, 0.0});
    const double nu_scale = static_cast<double>(n_mod) / psi_n;
    for (uint32_t n : set_n.members)
        if (n < n_mod) nu[n] = cdouble{nu_scale, 0.0};
    std::vector<cdouble> nu_hat = dft_bluestein(nu, +1);
    double eta = 0.0;
    for (uint64_t a = 1; a < n_mod; ++a)
        eta = std::max(eta, std::abs(nu_hat[a]) / static_cast<double>(n_mod));

    // f = (N / Psi(N,y)) * 1_B; discrete 2.1-moment of f_hat / N.
    std::vector<cdouble> f(n_mod, cdouble{0.0, 0.0});
    for (uint32_t n : b) f[n % n_mod] = cdouble{nu_scale, 0.0};
    std::vector<cdouble> f_hat = dft_bluestein(f, +1);
    KahanSum mom;
    for (uint64_t a = 0; a < n_mod; ++a) {
        double v = std::abs(f_hat[a]) / static_cast<double>(n_mod);
        mom.add(v == 0.0 ? 0.0 : std::pow(v, 2.1));
    }

    // AP counts: integers directly, and over Z/N (must agree -- no wraparound
    // is possible with max(B) <= x < N/2).
    uint64_t ap_integer = count_3aps(b);
    std::vector<int64_t> r_mod = cyclic_pair_counts(b, n_mod);
    std::vector<uint8_t> in_b(n_mod, 0);
    for (uint32_t n : b) in_b[n % n_mod] = 1;
    uint64_t pairs_mod = 0;
    for (uint64_t m = 0; m < n_mod; ++m)
        if (in_b[m]) pairs_mod += static_cast<uint64_t>(r_mod[(2 * m) % n_mod]);
    uint64_t ap_mod = (pairs_mod - b.size()) / 2;

    RothReport rep;
    rep.b_size = b.size();
    rep.beta = beta;
    rep.ap_count = ap_integer;
    rep.ap_count_mod_n = ap_mod;
    rep.eta = eta;
    rep.moment_m = mom.value();
    rep.n_modulus = n_mod;
    rep.lower_bound_scale = psi_n * psi_n * psi_n / static_cast<double>(n_mod);
    rep.transference_ratio =
        rep.lower_bound_scale > 0 ? static_cast<double>(ap_integer) / rep.lower_bound_scale : 0.0;
    return rep;
}

VerificationRecord mz_check(std::span<const uint32_t> b_set, uint64_t n_modulus, double p) {
    if (p < 2.0) throw_out_of_range("mz_check: p must be >= 2");
    uint32_t top = 0;
    for (uint32_t n : b_set) top = std::max(top, n);
    if (n_modulus <= top) throw_invalid("mz_check: N must exceed max(B)");

    // Discrete side over Z/N.
    std::vector<cdouble> f(n_modulus, cdouble{0.0, 0.0});
    for (uint32_t n : b_set) f[n % n_modulus] += cdouble{1.0, 0.0};
    std::vector<cdouble> f_hat = dft_bluestein(f, +1);
    KahanSum lhs_acc;
    for (uint64_t a = 0; a < n_modulus; ++a) {
        double s2 = std::norm(f_hat[a]);
        lhs_acc.add(s2 == 0.0 ? 0.0 : std::pow(s2, 0.5 * p));
    }
    double lhs = lhs_acc.value() / static_cast<double>(n_modulus);

    // Continuous side via the moment machinery on the indicator of B.
    std::vector<cdouble> coeffs(top + 1, cdouble{0.0, 0.0});
    for (uint32_t n : b_set) coeffs[n] = cdouble{1.0, 0.0};
    MomentEstimate mom = moment_of_coeffs(coeffs, p);

    return make_record({{"b_size", static_cast<double>(b_set.size())},
                        {"n_modulus", static_cast<double>(n_modulus)},
                        {"p", p}},
                       lhs, mom.value, true);
}

}  // namespace smoothwave
