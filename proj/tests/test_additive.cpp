#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "smoothwave/additive.hpp"
#include "smoothwave/bound_lab.hpp"
#include "smoothwave/errors.hpp"
#include "smoothwave/expsum.hpp"
#include "smoothwave/primes.hpp"
#include "smoothwave/rng.hpp"

using namespace smoothwave;

TEST_CASE("abc_count closed forms") {
    AbcCount all = abc_count(sieve_smooth(10, 10), CountMethod::BruteForce);
    CHECK(all.exact == 45);  // sum_{c=2..10} (c-1)

    AbcCount pow2 = abc_count(sieve_smooth(10, 2), CountMethod::BruteForce);
    CHECK(pow2.exact == 3);  // 1+1=2, 2+2=4, 4+4=8

    AbcCount conv = abc_count(sieve_smooth(10, 2), CountMethod::Convolution);
    CHECK(conv.exact == 3);
    CHECK(conv.predicted == doctest::Approx(std::pow(4.0, 3) / 20.0));
    CHECK(conv.ratio == doctest::Approx(3.0 / (64.0 / 20.0)));

    // y >= x degenerate: every pair a+b=c <= x counts, x(x-1)/2 in total
    AbcCount deg = abc_count(sieve_smooth(137, 137), CountMethod::Convolution);
    CHECK(deg.exact == 137 * 136 / 2);
}

TEST_CASE("abc convolution equals brute force") {
    for (uint64_t y : {uint64_t{2}, uint64_t{3}, uint64_t{5}, uint64_t{24}, uint64_t{600}}) {
        SmoothSet set = sieve_smooth(600, y);
        CHECK(abc_pair_counts(set, CountMethod::Convolution) ==
              abc_pair_counts(set, CountMethod::BruteForce));
    }
    CHECK_THROWS_AS(abc_pair_counts(sieve_smooth(20'000, 10), CountMethod::BruteForce), Error);
}

TEST_CASE("circle_split conservation") {
    SmoothSet set = sieve_smooth(2000, 44);
    AbcCount exact = abc_count(set, CountMethod::Convolution);
    CircleSplit split = circle_split(set, major_arc_cap(2000), 8192);
    CHECK(split.total == doctest::Approx(double(exact.exact)).epsilon(1e-6));
    CHECK(split.major + split.minor == doctest::Approx(split.total).epsilon(1e-12));
    CHECK(split.major_fraction > 0.0);
    CHECK(split.major_fraction <= 1.0 + 1e-12);

    CHECK_THROWS_AS(circle_split(set, 5, 4096), Error);  // grid < 4x
}

TEST_CASE("count_3aps closed forms and oracle") {
    CHECK(count_3aps(std::vector<uint32_t>{1, 2, 3}) == 1);
    CHECK(count_3aps(std::vector<uint32_t>{1, 2, 4, 8}) == 0);
    std::vector<uint32_t> interval(10);
    for (uint32_t i = 0; i < 10; ++i) interval[i] = i + 1;
    CHECK(count_3aps(interval) == 20);  // 8+6+4+2

    std::mt19937_64 rng(37);
    for (int t = 0; t < 80; ++t) {
        std::vector<uint32_t> b;
        uint32_t top = uint32_t(uniform_u64(rng, 3, 200));
        for (uint32_t n = 1; n <= top; ++n)
            if (uniform01(rng) < 0.35) b.push_back(n);
        if (b.empty()) continue;
        CHECK(count_3aps(b) == oracles::count_3aps(b));
    }

    // [1..x] intervals against the exhaustive loop
    for (uint32_t x : {50u, 137u, 500u}) {
        std::vector<uint32_t> iv(x);
        for (uint32_t i = 0; i < x; ++i) iv[i] = i + 1;
        CHECK(count_3aps(iv) == oracles::count_3aps(iv));
    }
}

TEST_CASE("roth_experiment") {
    CHECK_THROWS_AS(roth_experiment(1000, 50, RothSelector::Full, 1.5), Error);  // beta > 1
    CHECK_THROWS_AS(roth_experiment(1000, 50, RothSelector::Full, 0.0), Error);

    RothReport rep = roth_experiment(2000, 100, RothSelector::Full, 1.0);
    CHECK(is_prime(rep.n_modulus));
    CHECK(rep.n_modulus > 4000);
    CHECK(rep.n_modulus < 8000);
    CHECK(rep.ap_count > 0);
    CHECK(rep.ap_count == rep.ap_count_mod_n);  // no wraparound possible
    CHECK(rep.eta > 0.0);
    CHECK(rep.eta < 1.0);
    CHECK(rep.moment_m > 0.0);
    CHECK(rep.transference_ratio ==
          doctest::Approx(double(rep.ap_count) / rep.lower_bound_scale));

    // prefix and random selectors respect |B| >= beta Psi(x,y)
    SmoothSet set_x = sieve_smooth(2000, 100);
    RothReport pre = roth_experiment(2000, 100, RothSelector::Prefix, 0.5);
    CHECK(pre.b_size >= uint64_t(0.5 * double(set_x.psi)));
    CHECK(pre.b_size < set_x.psi);
    RothReport rnd = roth_experiment(2000, 100, RothSelector::Random, 0.5, 123);
    CHECK(rnd.b_size == pre.b_size);
    RothReport rnd2 = roth_experiment(2000, 100, RothSelector::Random, 0.5, 123);
    CHECK(rnd2.ap_count == rnd.ap_count);  // deterministic under the seed

    // y >= N degenerate: nu is the full-interval indicator, eta = 1/N
    RothReport flat = roth_experiment(500, 100'000, RothSelector::Full, 1.0);
    CHECK(flat.eta == doctest::Approx(1.0 / double(flat.n_modulus)).epsilon(1e-9));

    // explicit B must live inside S(y) n [1,x]
    std::vector<uint32_t> bad = {1, 2, 1999};  // 1999 is prime > y
    CHECK_THROWS_AS(roth_experiment(2000, 100, RothSelector::Full, 0.001, 0, &bad), Error);
}

TEST_CASE("mz_check") {
    std::vector<uint32_t> b = {1, 2, 4, 8};
    VerificationRecord p2 = mz_check(b, 17, 2.0);
    CHECK(p2.lhs == doctest::Approx(4.0).epsilon(1e-12));  // discrete Parseval
    CHECK(p2.rhs == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(p2.ratio == doctest::Approx(1.0).epsilon(1e-9));

    // p = 4: both sides by independent computation
    VerificationRecord p4 = mz_check(b, 17, 4.0);
    double lhs_direct = 0.0;
    for (uint64_t a = 0; a < 17; ++a) {
        double m = std::abs(oracles::dft_at(b, 17, a));
        lhs_direct += std::pow(m, 4.0);
    }
    lhs_direct /= 17.0;
    CHECK(p4.lhs == doctest::Approx(lhs_direct).epsilon(1e-10));
    CHECK(p4.rhs == doctest::Approx(double(oracles::additive_energy(b))).epsilon(1e-9));

    std::mt19937_64 rng(41);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        std::vector<uint32_t> s;
        for (uint32_t n = 1; n <= 100; ++n)
            if (uniform01(rng) < 0.3) s.push_back(n);
        if (s.empty()) continue;
        uint64_t n_mod = uniform_u64(rng, 101, 400);
        worst = std::max(worst, mz_check(s, n_mod, 2.1).ratio);
    }
    CHECK(worst <= 1.3);  // calibrated mz-ratio constant

    CHECK_THROWS_AS(mz_check(b, 8, 2.1), Error);   // N <= max(B)
    CHECK_THROWS_AS(mz_check(b, 17, 1.5), Error);  // p < 2
}
