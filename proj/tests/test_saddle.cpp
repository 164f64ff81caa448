#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "smoothwave/errors.hpp"
#include "smoothwave/saddle.hpp"
#include "smoothwave/smooth_core.hpp"

using namespace smoothwave;

TEST_CASE("solve_alpha closed forms") {
    // single prime: log2/(2^a - 1) = log x
    SaddlePoint s22 = solve_alpha(2.0, 2, 1e-13);
    CHECK(s22.alpha == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s22.u == doctest::Approx(1.0));

    SaddlePoint s42 = solve_alpha(4.0, 2, 1e-13);
    CHECK(s42.alpha == doctest::Approx(std::log(1.5) / std::log(2.0)).epsilon(1e-13));

    SaddlePoint big = solve_alpha(1e6, 1000, 1e-12);
    CHECK(std::abs(big.residual) < 1e-10);
    CHECK(big.u == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("solve_alpha residual, monotonicity, errors") {
    for (uint64_t y : {2ull, 30ull, 1000ull}) {
        double prev = 1e300;
        for (double x : {1e2, 1e3, 1e4, 1e5, 1e6, 1e7}) {
            SaddlePoint sp = solve_alpha(x, y, 1e-12);
            CHECK(std::abs(sp.residual) <= 1e-10);
            CHECK(sp.alpha > 0.0);
            CHECK(sp.alpha < prev);
            prev = sp.alpha;
        }
    }
    CHECK_THROWS_AS(solve_alpha(1.0, 2, 1e-12), Error);
    CHECK_THROWS_AS(solve_alpha(10.0, 1, 1e-12), Error);
    CHECK_THROWS_AS(solve_alpha(10.0, 2, 0.0), Error);
    // y > x is legal; the equation still has a unique root
    CHECK(solve_alpha(10.0, 1000, 1e-12).alpha > 1.0);
}

TEST_CASE("alpha_approx") {
    double v = alpha_approx(1e6, 1000);
    CHECK(v == doctest::Approx(0.8860).epsilon(1e-3));

    // x = y makes u = 1 and log(log 2) < 0, so the value exceeds 1
    CHECK(alpha_approx(50.0, 50) > 1.0);

    CHECK_THROWS_AS(alpha_approx(1e6, 10), Error);  // y <= log x

    for (double x : {1e3, 1e5, 1e6}) {
        for (uint64_t y : {100ull, 1000ull}) {
            double gap = std::abs(alpha_approx(x, y) - solve_alpha(x, y, 1e-12).alpha);
            CHECK(gap * std::log(double(y)) <= 1.0);  // calibrated alpha-approx constant
        }
    }
}

TEST_CASE("zeta_partial") {
    CHECK(zeta_partial(1.0, 2) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(zeta_partial(1.0, 3) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(zeta_partial(2.0, 3) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK_THROWS_AS(zeta_partial(0.0, 3), Error);
    CHECK_THROWS_AS(zeta_partial(-1.0, 3), Error);

    for (uint64_t y : {2ull, 97ull, 1000ull}) {
        double z = zeta_partial(solve_alpha(1e5, y, 1e-12).alpha, y);
        CHECK(z >= 1.0);
        CHECK(std::isfinite(z));
    }
}

TEST_CASE("ht_estimate") {
    // x = y: Psi(x,x) = floor(x)
    double est = ht_estimate(1000.0, 1000);
    double ratio = est / 1000.0;
    CHECK(ratio > 0.0);
    CHECK(std::isfinite(ratio));

    SmoothSet set = sieve_smooth(10'000, 100);
    double r = ht_estimate(1e4, 100) / double(set.psi);
    CHECK(r > 2.0 / 3.0);
    CHECK(r < 3.0 / 2.0);

    CHECK_THROWS_AS(ht_estimate(10.0, 100), Error);  // x < y
}

TEST_CASE("dickman rho") {
    CHECK(dickman_rho(0.0) == 1.0);
    CHECK(dickman_rho(0.5) == 1.0);
    CHECK(dickman_rho(1.0) == 1.0);
    CHECK(dickman_rho(2.0) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-8));

    // 1 < u <= 2 analytic branch: rho(u) = 1 - log u
    for (double u : {1.25, 1.5, 1.75}) {
        CHECK(dickman_rho(u) == doctest::Approx(1.0 - std::log(u)).epsilon(1e-7));
    }

    // step-halving oracle at u = 3
    DickmanTable coarse = build_dickman_table();
    DickmanTable fine = build_dickman_table(coarse.h / 2.0, 10.0);
    CHECK(std::abs(coarse.rho(3.0) - fine.rho(3.0)) < 1e-6);

    double prev = 1.0;
    for (double u = 1.05; u <= 19.5; u += 0.35) {
        double v = dickman_rho(u);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }

    CHECK_THROWS_AS(dickman_rho(20.5), Error);
    CHECK_THROWS_AS(dickman_rho(-0.1), Error);
    CHECK_THROWS_AS(build_dickman_table(0.3, 5.0), Error);  // h must divide 1
}

TEST_CASE("hildebrand comparison at desk scale") {
    SmoothSet set = sieve_smooth(100'000, 1000);
    double u = std::log(1e5) / std::log(1e3);
    CHECK(std::abs(1e5 * dickman_rho(u) / double(set.psi) - 1.0) <= 0.15);
}
