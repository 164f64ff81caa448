#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smoothwave/records.hpp"

namespace smoothwave {

inline constexpr uint64_t kDefaultSieveCeiling = 100'000'000;

// The sieved set S(y) n [1,x]. Immutable after construction; safe to share
// read-only across threads. 1 counts as smooth for every y.
struct SmoothSet {
    uint64_t x = 0;
    uint64_t y = 0;
    std::vector<uint32_t> members;    // strictly increasing
    std::vector<uint64_t> indicator;  // bit n set <=> n smooth, n in [0, x]
    uint64_t psi = 0;                 // |members|

    bool is_smooth(uint64_t n) const {
        if (n > x) return false;
        return (indicator[n >> 6] >> (n & 63)) & 1u;
    }
    // Psi(m, y) for m <= x, via the sorted member list.
    uint64_t psi_prefix(double m) const;
};

// Largest-prime-factor style sieve over [1, x]: divide out primes <= y, a
// survivor reduced to 1 is smooth. O(x log log y) time, O(x) transient space.
SmoothSet sieve_smooth(uint64_t x, uint64_t y, uint64_t ceiling = kDefaultSieveCeiling);

// #{X <= n <= X+Z : n = a mod q, n in S(y)} by a segmented divide-out sieve.
uint64_t psi_segment(double X, double Z, uint64_t q, uint64_t a, uint64_t y,
                     uint64_t ceiling = kDefaultSieveCeiling);

// RHS of the segment upper bound: (Z/(qX)) * Psi(X,y) * (Xq/Z)^(1-alpha) * log X.
double segment_bound_rhs(double X, double Z, uint64_t q, double psi_xy, double alpha);
// Stated hypotheses of that bound: log X <= y <= X and qy <= Z <= X.
bool segment_bound_hypothesis_ok(double X, double Z, uint64_t q, uint64_t y);

// Local comparison Psi(x/d, y) vs d^(-alpha) * Psi(x, y).
VerificationRecord local_ratio(uint64_t x, uint64_t y, double d, double alpha);
VerificationRecord local_ratio(const SmoothSet& set, double d, double alpha);

// Prefix product m of the smallest prime factors of n (with multiplicity),
// minimal exceeding the threshold; m = n when no prefix exceeds it.
struct FactorSplit {
    uint64_t n = 0;
    double threshold = 0.0;
    uint64_t m = 1;
    uint64_t rest = 1;
};
FactorSplit factor_split(uint64_t n, double threshold);

// max over 1 <= b <= r-1 of #{ordered (n1,n2) : n1,n2 <= bound smooth,
// n1 - n2 = b mod r}.
uint64_t congruence_pair_count(uint64_t bound, uint64_t y, uint64_t r);

// Flat bitmap file: "SMBM", LE u64 x, LE u64 y, ceil((x+1)/8) bitmap bytes
// (bit j of byte i is n = 8i + j).
void write_smbm(const SmoothSet& set, const std::string& path);
SmoothSet read_smbm(const std::string& path);

}  // namespace smoothwave
