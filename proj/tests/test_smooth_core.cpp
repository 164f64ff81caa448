#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "smoothwave/errors.hpp"
#include "smoothwave/rng.hpp"
#include "smoothwave/saddle.hpp"
#include "smoothwave/smooth_core.hpp"

using namespace smoothwave;

TEST_CASE("sieve examples") {
    SmoothSet p2 = sieve_smooth(10, 2);
    CHECK(p2.members == std::vector<uint32_t>{1, 2, 4, 8});
    CHECK(p2.psi == 4);

    SmoothSet all = sieve_smooth(10, 10);
    CHECK(all.psi == 10);
    CHECK(all.members.front() == 1);
    CHECK(all.members.back() == 10);

    // Psi(100,5): brute enumeration of 2^a 3^b 5^c <= 100.
    uint64_t count = 0;
    for (uint64_t a = 1; a <= 100; a *= 2)
        for (uint64_t b = a; b <= 100; b *= 3)
            for (uint64_t c = b; c <= 100; c *= 5) ++count;
    CHECK(count == 34);
    CHECK(sieve_smooth(100, 5).psi == count);
}

TEST_CASE("sieve errors and ceiling") {
    CHECK_THROWS_AS(sieve_smooth(10, 1), Error);
    CHECK_THROWS_AS(sieve_smooth(0, 5), Error);
    try {
        sieve_smooth(1000, 5, 100);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ResourceLimit);
    }
}

TEST_CASE("sieve agrees with trial division") {
    for (uint64_t y : {2ull, 3ull, 7ull, 30ull, 1499ull}) {
        SmoothSet set = sieve_smooth(1500, y);
        CHECK(set.members == oracles::smooth_members(1500, y));
    }
}

TEST_CASE("psi monotone in x and y, Buchstab recount") {
    SmoothSet lo = sieve_smooth(8000, 30), hi = sieve_smooth(8000, 200);
    uint64_t prev = 0;
    for (uint64_t m = 1; m <= 8000; m += 61) {
        uint64_t cur = hi.psi_prefix(double(m));
        CHECK(cur >= prev);
        prev = cur;
    }
    CHECK(hi.psi >= lo.psi);

    uint64_t recount = 0;
    for (uint32_t n : hi.members) {
        uint64_t p = oracles::largest_prime_factor(n);
        if (p > 30 && p <= 200) ++recount;
    }
    CHECK(hi.psi - lo.psi == recount);
}

TEST_CASE("psi_segment examples") {
    // 5-smooth n in [100,150] divisible by 3: 108, 120, 135, 144, 150.
    CHECK(psi_segment(100, 50, 3, 0, 5) == 5);
    // every integer in [10,15] is 15-smooth
    CHECK(psi_segment(10, 5, 1, 0, 15) == 6);
    // powers of two in [100,150]: only 128, and 128 = 2 mod 7
    CHECK(psi_segment(100, 50, 7, 2, 2) == 1);
    CHECK(psi_segment(100, 50, 7, 1, 2) == 0);

    CHECK_THROWS_AS(psi_segment(100, 50, 3, 3, 5), Error);
    CHECK(psi_segment(50, 0, 1, 0, 5) == (oracles::is_smooth(50, 5) ? 1 : 0));
}

TEST_CASE("psi_segment against direct recount") {
    std::mt19937_64 rng(7);
    SmoothSet set = sieve_smooth(3000, 11);
    for (int t = 0; t < 300; ++t) {
        double X = uniform(rng, 1.0, 2500.0);
        double Z = uniform(rng, 0.0, 450.0);
        uint64_t q = uniform_u64(rng, 1, 9);
        uint64_t a = uniform_u64(rng, 0, q - 1);
        uint64_t direct = 0;
        for (uint64_t n = uint64_t(std::ceil(X)); n <= uint64_t(std::floor(X + Z)); ++n)
            if (n % q == a && set.is_smooth(n)) ++direct;
        CHECK(psi_segment(X, Z, q, a, 11) == direct);
    }
}

TEST_CASE("segment bound rhs evaluator and hypothesis") {
    double X = 1e4, Z = 500;
    uint64_t q = 2, y = 50;
    SmoothSet set = sieve_smooth(uint64_t(X), y);
    double alpha = solve_alpha(X, y, 1e-12).alpha;
    double rhs = segment_bound_rhs(X, Z, q, double(set.psi), alpha);
    double expected = (Z / (q * X)) * double(set.psi) * std::pow(X * q / Z, 1.0 - alpha) *
                      std::log(X);
    CHECK(rhs == doctest::Approx(expected).epsilon(1e-14));
    CHECK(segment_bound_hypothesis_ok(X, Z, q, y));
    CHECK_FALSE(segment_bound_hypothesis_ok(X, 10, q, y));     // Z < qy
    CHECK_FALSE(segment_bound_hypothesis_ok(X, Z, q, 5));      // y < log X
    CHECK_FALSE(segment_bound_hypothesis_ok(X, 2 * X, q, y));  // Z > X
}

TEST_CASE("local_ratio") {
    SmoothSet set = sieve_smooth(10'000, 100);
    double alpha = solve_alpha(1e4, 100, 1e-12).alpha;

    VerificationRecord identity = local_ratio(set, 1.0, alpha);
    CHECK(identity.ratio == 1.0);

    VerificationRecord r = local_ratio(set, 10.0, alpha);
    CHECK(r.lhs == double(sieve_smooth(1000, 100).psi));
    CHECK(std::isfinite(r.ratio));
    CHECK(r.ratio > 0.0);

    VerificationRecord tiny = local_ratio(100, 5, 100.0, solve_alpha(100, 5, 1e-12).alpha);
    CHECK(tiny.lhs == 1.0);  // Psi(1,5) = 1
    CHECK(tiny.rhs == doctest::Approx(34.0 * std::pow(100.0, -solve_alpha(100, 5, 1e-12).alpha)));

    CHECK_THROWS_AS(local_ratio(set, 0.5, alpha), Error);
}

TEST_CASE("factor_split examples") {
    FactorSplit a = factor_split(12, 3.0);
    CHECK(a.m == 4);
    CHECK(a.rest == 3);

    FactorSplit b = factor_split(97, 0.5);  // prime: first factor already exceeds
    CHECK(b.m == 97);
    CHECK(b.rest == 1);

    FactorSplit c = factor_split(30, 1.0);
    CHECK(c.m == 2);
    CHECK(c.rest == 15);

    FactorSplit whole = factor_split(12, 100.0);  // no prefix exceeds
    CHECK(whole.m == 12);
    CHECK(whole.rest == 1);

    FactorSplit one = factor_split(1, 5.0);
    CHECK(one.m == 1);
    CHECK(one.rest == 1);
}

TEST_CASE("factor_split invariants on random n") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20'000; ++t) {
        uint64_t n = uniform_u64(rng, 1, 1'000'000'000ull);
        double threshold = std::exp(uniform(rng, 0.0, std::log(1e9)));
        FactorSplit fs = factor_split(n, threshold);
        CHECK(fs.m * fs.rest == n);
        CHECK((double(fs.m) > threshold || fs.m == n));
        if (threshold >= 1.0 && fs.m > 1) {
            // removing the largest prime of m lands at or below the threshold
            CHECK(double(fs.m / oracles::largest_prime_factor(fs.m)) <= threshold);
        }
        if (fs.rest > 1)
            CHECK(oracles::smallest_prime_factor(fs.rest) >= oracles::largest_prime_factor(fs.m));
    }
}

TEST_CASE("congruence_pair_count") {
    CHECK(congruence_pair_count(4, 3, 2) == 8);
    CHECK(congruence_pair_count(1, 2, 5) == 0);

    // brute force over the 2-smooth set {1,2,4,8}
    auto members = oracles::smooth_members(8, 2);
    uint64_t best = 0;
    for (uint64_t b = 1; b < 3; ++b) {
        uint64_t pairs = 0;
        for (uint32_t n1 : members)
            for (uint32_t n2 : members)
                if (n1 % 3 == (n2 + b) % 3) ++pairs;  // n1 - n2 = b mod 3
        best = std::max(best, pairs);
    }
    CHECK(congruence_pair_count(8, 2, 3) == best);

    CHECK_THROWS_AS(congruence_pair_count(8, 2, 1), Error);
}

TEST_CASE("smbm round trip and format") {
    SmoothSet set = sieve_smooth(300, 7);
    std::string path = "test_roundtrip.smbm";
    write_smbm(set, path);

    // header: magic + little-endian x, y
    FILE* f = std::fopen(path.c_str(), "rb");
    REQUIRE(f != nullptr);
    unsigned char head[20];
    REQUIRE(std::fread(head, 1, 20, f) == 20);
    std::fclose(f);
    CHECK(head[0] == 'S');
    CHECK(head[1] == 'M');
    CHECK(head[2] == 'B');
    CHECK(head[3] == 'M');
    CHECK(head[4] == 300 % 256);
    CHECK(head[5] == 300 / 256);
    CHECK(head[12] == 7);

    SmoothSet back = read_smbm(path);
    CHECK(back.x == set.x);
    CHECK(back.y == set.y);
    CHECK(back.members == set.members);
    CHECK(back.psi == set.psi);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(read_smbm("does_not_exist.smbm"), Error);
}
