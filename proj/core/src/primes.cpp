#include "smoothwave/primes.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "smoothwave/errors.hpp"

namespace smoothwave {

namespace {

std::shared_ptr<const std::vector<uint32_t>> sieve_primes(uint64_t limit) {
    auto out = std::make_shared<std::vector<uint32_t>>();
    if (limit < 2) return out;
    std::vector<uint8_t> composite(limit + 1, 0);
    for (uint64_t p = 2; p * p <= limit; ++p) {
        if (composite[p]) continue;
        for (uint64_t m = p * p; m <= limit; m += p) composite[m] = 1;
    }
    for (uint64_t n = 2; n <= limit; ++n)
        if (!composite[n]) out->push_back(static_cast<uint32_t>(n));
    return out;
}

std::mutex g_prime_mutex;
uint64_t g_prime_limit = 0;
std::shared_ptr<const std::vector<uint32_t>> g_primes;

}  // namespace

std::shared_ptr<const std::vector<uint32_t>> prime_cache(uint64_t limit) {
    if (limit > (1ull << 32)) throw_resource_limit("prime list limit exceeds 2^32");
    std::lock_guard<std::mutex> lock(g_prime_mutex);
    if (!g_primes || limit > g_prime_limit) {
        // Grow with headroom so repeated nearby requests reuse one table.
        uint64_t target = std::max<uint64_t>(limit, std::max<uint64_t>(1024, g_prime_limit * 2));
        g_primes = sieve_primes(target);
        g_prime_limit = target;
    }
    return g_primes;
}

std::shared_ptr<const std::vector<uint32_t>> primes_up_to(uint64_t limit) {
    auto all = prime_cache(limit);
    auto cut = std::upper_bound(all->begin(), all->end(), limit);
    return std::make_shared<const std::vector<uint32_t>>(all->begin(), cut);
}

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Bases valid deterministically for n < 3.3e14.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

uint64_t next_prime_above(uint64_t n) {
    uint64_t c = n + 1;
    if (c <= 2) return 2;
    if ((c & 1) == 0) ++c;
    while (!is_prime(c)) c += 2;
    return c;
}

Factorization factorize(uint64_t n) {
    Factorization f;
    if (n <= 1) return f;
    uint64_t rem = n;
    uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(n))) + 2;
    auto primes = prime_cache(root);
    for (uint32_t p : *primes) {
        if (static_cast<uint64_t>(p) * p > rem) break;
        if (rem % p == 0) {
            uint32_t e = 0;
            while (rem % p == 0) {
                rem /= p;
                ++e;
            }
            f.factors.emplace_back(p, e);
        }
    }
    if (rem > 1) f.factors.emplace_back(rem, 1);
    return f;
}

int moebius(uint64_t n) {
    if (n == 0) throw_invalid("moebius(0)");
    auto f = factorize(n);
    for (const auto& [p, e] : f.factors)
        if (e > 1) return 0;
    return (f.factors.size() % 2 == 0) ? 1 : -1;
}

uint64_t euler_phi(uint64_t n) {
    if (n == 0) throw_invalid("euler_phi(0)");
    uint64_t r = n;
    for (const auto& [p, e] : factorize(n).factors) r = r / p * (p - 1);
    return r;
}

uint32_t omega(uint64_t n) {
    return static_cast<uint32_t>(factorize(n).factors.size());
}

std::vector<uint64_t> divisors(uint64_t n) {
    std::vector<uint64_t> out{1};
    for (const auto& [p, e] : factorize(n).factors) {
        size_t base = out.size();
        uint64_t pk = 1;
        for (uint32_t k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace smoothwave
