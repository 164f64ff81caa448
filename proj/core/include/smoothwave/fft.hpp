#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace smoothwave {

using cdouble = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// e(t) := exp(2 pi i t); the argument is reduced mod 1 in extended precision
// first, so n*theta stays accurate for n up to the sieve ceiling.
cdouble unit_phase(long double t);

bool is_pow2(uint64_t n);
uint64_t next_pow2(uint64_t n);

// In-place radix-2 transform, a.size() a power of two, no normalisation:
//   a[k] <- sum_j a[j] * exp(sign * 2 pi i * jk / n)
void fft_pow2(std::vector<cdouble>& a, int sign);

// Arbitrary-size transform via Bluestein's chirp (used for prime moduli):
//   out[k] = sum_j in[j] * exp(sign * 2 pi i * jk / n)
std::vector<cdouble> dft_bluestein(const std::vector<cdouble>& in, int sign);

// Integer-rounded linear self-convolution: out[s] = sum_{i+j=s} a[i]*a[j].
// Throws NumericFailure when any rounding residual exceeds 0.25 (FFT
// precision exhausted for this size).
std::vector<int64_t> self_convolve_integer(const std::vector<double>& a);

// Neumaier compensated accumulator.
struct KahanSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

}  // namespace smoothwave
