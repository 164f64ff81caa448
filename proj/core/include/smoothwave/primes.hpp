#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace smoothwave {

// Shared Eratosthenes prime cache. The cache only grows; callers hold a
// shared_ptr so a concurrent grow never invalidates a list in use.
//
// prime_cache(limit) returns the whole cache, guaranteed to contain every
// prime <= limit (and usually more) -- callers bound their own iteration.
// primes_up_to(limit) returns an exact trimmed copy.
std::shared_ptr<const std::vector<uint32_t>> prime_cache(uint64_t limit);
std::shared_ptr<const std::vector<uint32_t>> primes_up_to(uint64_t limit);

// Deterministic Miller-Rabin, valid for all n < 3.3e14 with the fixed base set.
bool is_prime(uint64_t n);
uint64_t next_prime_above(uint64_t n);

// Factorisation helpers by trial division against the cached prime list.
// Intended for small arguments (moduli q, divisor lattices), not for sieving.
struct Factorization {
    std::vector<std::pair<uint64_t, uint32_t>> factors;  // (prime, exponent)
};
Factorization factorize(uint64_t n);

int moebius(uint64_t n);
uint64_t euler_phi(uint64_t n);
uint32_t omega(uint64_t n);  // number of distinct prime factors
std::vector<uint64_t> divisors(uint64_t n);

uint64_t gcd_u64(uint64_t a, uint64_t b);

}  // namespace smoothwave
