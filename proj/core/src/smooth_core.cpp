#include "smoothwave/smooth_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "smoothwave/errors.hpp"
#include "smoothwave/primes.hpp"

namespace smoothwave {

namespace {

// Divide-out sieve over the segment [lo, hi]: flags[i] = 1 iff lo+i is
// y-smooth. One pass per prime p <= y strips every power of p, so a
// survivor is smooth exactly when its residue drops to 1.
std::vector<uint8_t> smooth_flags_segment(uint64_t lo, uint64_t hi, uint64_t y) {
    const uint64_t len = hi - lo + 1;
    std::vector<uint64_t> rem(len);
    for (uint64_t i = 0; i < len; ++i) rem[i] = lo + i;

    const uint64_t plimit = std::min(y, hi);
    auto primes = prime_cache(plimit);
    for (uint32_t p : *primes) {
        if (p > plimit) break;
        uint64_t first = std::max<uint64_t>(((lo + p - 1) / p) * p, p);
        for (uint64_t m = first; m <= hi; m += p) {
            uint64_t& r = rem[m - lo];
            while (r % p == 0) r /= p;
        }
    }
    std::vector<uint8_t> flags(len, 0);
    for (uint64_t i = 0; i < len; ++i) flags[i] = (rem[i] == 1 && lo + i >= 1) ? 1 : 0;
    return flags;
}

}  // namespace

uint64_t SmoothSet::psi_prefix(double m) const {
    if (m < 1.0) return 0;
    uint64_t mm = static_cast<uint64_t>(std::floor(m));
    if (mm >= x) return psi;
    auto it = std::upper_bound(members.begin(), members.end(), static_cast<uint32_t>(mm));
    return static_cast<uint64_t>(it - members.begin());
}

SmoothSet sieve_smooth(uint64_t x, uint64_t y, uint64_t ceiling) {
    if (y < 2) throw_invalid("sieve_smooth: y must be >= 2");
    if (x < 1) throw_invalid("sieve_smooth: x must be >= 1");
    if (x > ceiling) throw_resource_limit("sieve_smooth: x exceeds the memory ceiling");

    SmoothSet set;
    set.x = x;
    set.y = y;
    set.indicator.assign((x + 64) / 64 + 1, 0);

    auto flags = smooth_flags_segment(1, x, y);
    for (uint64_t n = 1; n <= x; ++n) {
        if (flags[n - 1]) {
            set.indicator[n >> 6] |= (1ull << (n & 63));
            set.members.push_back(static_cast<uint32_t>(n));
        }
    }
    set.psi = set.members.size();
    return set;
}

uint64_t psi_segment(double X, double Z, uint64_t q, uint64_t a, uint64_t y, uint64_t ceiling) {
    if (q < 1) throw_invalid("psi_segment: q must be >= 1");
    if (a >= q) throw_invalid("psi_segment: residue a must satisfy 0 <= a < q");
    if (Z < 0) throw_invalid("psi_segment: Z must be >= 0");
    if (y < 2) throw_invalid("psi_segment: y must be >= 2");
    if (X + Z > static_cast<double>(ceiling)) throw_resource_limit("psi_segment: X+Z exceeds ceiling");

    uint64_t lo = static_cast<uint64_t>(std::ceil(X));
    uint64_t hi = static_cast<uint64_t>(std::floor(X + Z));
    if (lo < 1) lo = 1;
    if (hi < lo) return 0;

    auto flags = smooth_flags_segment(lo, hi, y);
    uint64_t count = 0;
    uint64_t first = lo + ((a + q - lo % q) % q);
    for (uint64_t n = first; n <= hi; n += q) count += flags[n - lo];
    return count;
}

double segment_bound_rhs(double X, double Z, uint64_t q, double psi_xy, double alpha) {
    if (Z <= 0 || X <= 1) return 0.0;
    double qd = static_cast<double>(q);
    return (Z / (qd * X)) * psi_xy * std::pow(X * qd / Z, 1.0 - alpha) * std::log(X);
}

bool segment_bound_hypothesis_ok(double X, double Z, uint64_t q, uint64_t y) {
    double yd = static_cast<double>(y);
    return std::log(X) <= yd && yd <= X && static_cast<double>(q) * yd <= Z && Z <= X;
}

VerificationRecord local_ratio(const SmoothSet& set, double d, double alpha) {
    if (d < 1.0) throw_invalid("local_ratio: d must be >= 1");
    double lhs = static_cast<double>(set.psi_prefix(static_cast<double>(set.x) / d));
    double rhs = std::pow(d, -alpha) * static_cast<double>(set.psi);
    return make_record({{"x", static_cast<double>(set.x)},
                        {"y", static_cast<double>(set.y)},
                        {"d", d},
                        {"alpha", alpha}},
                       lhs, rhs, d >= 1.0);
}

VerificationRecord local_ratio(uint64_t x, uint64_t y, double d, double alpha) {
    return local_ratio(sieve_smooth(x, y), d, alpha);
}

FactorSplit factor_split(uint64_t n, double threshold) {
    if (n < 1) throw_invalid("factor_split: n must be >= 1");
    if (threshold < 0) throw_invalid("factor_split: threshold must be >= 0");
    FactorSplit fs;
    fs.n = n;
    fs.threshold = threshold;
    // Reveal primes smallest-first, with multiplicity, until the nonempty
    // prefix product exceeds the threshold; m = n when no prefix does.
    uint64_t m = 1;
    uint64_t rest = n;
    auto primes = prime_cache(static_cast<uint64_t>(std::sqrt(static_cast<double>(n))) + 2);
    while (rest > 1 && !(m > 1 && static_cast<double>(m) > threshold)) {
        uint64_t p = rest;  // smallest prime factor of rest
        for (uint32_t cand : *primes) {
            if (static_cast<uint64_t>(cand) * cand > rest) break;
            if (rest % cand == 0) {
                p = cand;
                break;
            }
        }
        m *= p;
        rest /= p;
    }
    fs.m = m;
    fs.rest = rest;
    return fs;
}

uint64_t congruence_pair_count(uint64_t bound, uint64_t y, uint64_t r) {
    if (r < 2) throw_invalid("congruence_pair_count: r must be >= 2");
    if (bound < 1) throw_invalid("congruence_pair_count: bound must be >= 1");
    SmoothSet set = sieve_smooth(bound, y);
    std::vector<uint64_t> residue_count(r, 0);
    for (uint32_t n : set.members) ++residue_count[n % r];
    uint64_t best = 0;
    for (uint64_t b = 1; b < r; ++b) {
        uint64_t pairs = 0;
        for (uint64_t r1 = 0; r1 < r; ++r1) {
            uint64_t r2 = (r1 + r - b % r) % r;  // n2 = n1 - b
            pairs += residue_count[r1] * residue_count[r2];
        }
        best = std::max(best, pairs);
    }
    return best;
}

void write_smbm(const SmoothSet& set, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw_invalid("write_smbm: cannot open " + path);
    f.write("SMBM", 4);
    auto put_u64 = [&](uint64_t v) {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
        f.write(reinterpret_cast<const char*>(b), 8);
    };
    put_u64(set.x);
    put_u64(set.y);
    const uint64_t nbytes = (set.x + 1 + 7) / 8;
    std::vector<unsigned char> bitmap(nbytes, 0);
    for (uint32_t n : set.members) bitmap[n >> 3] |= static_cast<unsigned char>(1u << (n & 7));
    f.write(reinterpret_cast<const char*>(bitmap.data()), static_cast<std::streamsize>(nbytes));
}

SmoothSet read_smbm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw_invalid("read_smbm: cannot open " + path);
    char magic[4];
    f.read(magic, 4);
    if (!f || std::memcmp(magic, "SMBM", 4) != 0) throw_invalid("read_smbm: bad magic");
    auto get_u64 = [&]() {
        unsigned char b[8];
        f.read(reinterpret_cast<char*>(b), 8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
        return v;
    };
    SmoothSet set;
    set.x = get_u64();
    set.y = get_u64();
    if (!f || set.x > kDefaultSieveCeiling) throw_invalid("read_smbm: corrupt header");
    const uint64_t nbytes = (set.x + 1 + 7) / 8;
    std::vector<unsigned char> bitmap(nbytes);
    f.read(reinterpret_cast<char*>(bitmap.data()), static_cast<std::streamsize>(nbytes));
    if (!f) throw_invalid("read_smbm: truncated bitmap");
    set.indicator.assign((set.x + 64) / 64 + 1, 0);
    for (uint64_t n = 1; n <= set.x; ++n) {
        if ((bitmap[n >> 3] >> (n & 7)) & 1u) {
            set.indicator[n >> 6] |= (1ull << (n & 63));
            set.members.push_back(static_cast<uint32_t>(n));
        }
    }
    set.psi = set.members.size();
    return set;
}

}  // namespace smoothwave
