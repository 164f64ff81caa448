#include "smoothwave/fft.hpp"

#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include "smoothwave/errors.hpp"

namespace smoothwave {

cdouble unit_phase(long double t) {
    long double r = t - std::floor(t);
    if (r < 0.0L) r += 1.0L;
    if (r >= 1.0L) r -= 1.0L;
    double ang = static_cast<double>(static_cast<long double>(kTwoPi) * r);
    return {std::cos(ang), std::sin(ang)};
}

bool is_pow2(uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

uint64_t next_pow2(uint64_t n) {
    uint64_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

namespace {

// One cached twiddle table; grid suites hammer a single FFT size.
std::mutex g_twiddle_mutex;
uint64_t g_twiddle_n = 0;
std::shared_ptr<const std::vector<cdouble>> g_twiddle;  // exp(+2 pi i j / n), j < n/2

std::shared_ptr<const std::vector<cdouble>> twiddles_for(uint64_t n) {
    std::lock_guard<std::mutex> lock(g_twiddle_mutex);
    if (g_twiddle_n != n) {
        auto t = std::make_shared<std::vector<cdouble>>(n / 2);
        for (uint64_t j = 0; j < n / 2; ++j) {
            double ang = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
            (*t)[j] = {std::cos(ang), std::sin(ang)};
        }
        g_twiddle = std::move(t);
        g_twiddle_n = n;
    }
    return g_twiddle;
}

}  // namespace

void fft_pow2(std::vector<cdouble>& a, int sign) {
    const uint64_t n = a.size();
    if (!is_pow2(n)) throw_invalid("fft_pow2 size must be a power of two");
    if (n == 1) return;

    // Bit-reversed addressing permutation.
    for (uint64_t i = 1, j = 0; i < n; ++i) {
        uint64_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const auto w_ptr = twiddles_for(n);
    const std::vector<cdouble>& w = *w_ptr;
    for (uint64_t len = 2; len <= n; len <<= 1) {
        const uint64_t stride = n / len;
        for (uint64_t i = 0; i < n; i += len) {
            for (uint64_t j = 0; j < len / 2; ++j) {
                cdouble tw = w[j * stride];
                if (sign < 0) tw = std::conj(tw);
                cdouble u = a[i + j];
                cdouble v = a[i + j + len / 2] * tw;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
}

std::vector<cdouble> dft_bluestein(const std::vector<cdouble>& in, int sign) {
    const uint64_t n = in.size();
    if (n == 0) return {};
    if (is_pow2(n)) {
        std::vector<cdouble> a = in;
        fft_pow2(a, sign);
        return a;
    }
    // jk = (j^2 + k^2 - (j-k)^2) / 2, so the transform is a chirp-modulated
    // convolution. Squares are reduced mod 2n in integers before the angle.
    const uint64_t m = next_pow2(2 * n - 1);
    auto chirp = [&](uint64_t j) {
        uint64_t sq = (static_cast<__uint128_t>(j) * j) % (2 * n);
        double ang = kTwoPi * static_cast<double>(sq) / (2.0 * static_cast<double>(n));
        if (sign < 0) ang = -ang;
        return cdouble{std::cos(ang), std::sin(ang)};
    };
    std::vector<cdouble> a(m, cdouble{0.0, 0.0});
    std::vector<cdouble> b(m, cdouble{0.0, 0.0});
    for (uint64_t j = 0; j < n; ++j) a[j] = in[j] * chirp(j);
    b[0] = cdouble{1.0, 0.0};
    for (uint64_t j = 1; j < n; ++j) {
        cdouble c = std::conj(chirp(j));
        b[j] = c;
        b[m - j] = c;
    }
    fft_pow2(a, +1);
    fft_pow2(b, +1);
    for (uint64_t j = 0; j < m; ++j) a[j] *= b[j];
    fft_pow2(a, -1);
    const double scale = 1.0 / static_cast<double>(m);
    std::vector<cdouble> out(n);
    for (uint64_t k = 0; k < n; ++k) out[k] = a[k] * scale * chirp(k);
    return out;
}

std::vector<int64_t> self_convolve_integer(const std::vector<double>& a) {
    if (a.empty()) return {};
    const uint64_t out_len = 2 * a.size() - 1;
    const uint64_t m = next_pow2(out_len);
    std::vector<cdouble> f(m, cdouble{0.0, 0.0});
    for (size_t i = 0; i < a.size(); ++i) f[i] = cdouble{a[i], 0.0};
    fft_pow2(f, +1);
    for (auto& z : f) z *= z;
    fft_pow2(f, -1);
    const double scale = 1.0 / static_cast<double>(m);
    // Beyond 2^53 every double is integer-valued, so the residual guard is
    // blind there; refuse outright.
    // TODO: swap in a 64-bit NTT for counts past the exact double range.
    constexpr double kExactLimit = 9007199254740992.0;
    std::vector<int64_t> out(out_len);
    double worst = 0.0;
    for (uint64_t s = 0; s < out_len; ++s) {
        double v = f[s].real() * scale;
        if (std::abs(v) >= kExactLimit)
            throw_numeric("convolution value exceeds the exact double range");
        double r = std::round(v);
        worst = std::max(worst, std::abs(v - r));
        out[s] = static_cast<int64_t>(r);
    }
    if (worst > 0.25)
        throw_numeric("convolution rounding residual " + std::to_string(worst) +
                      " exceeds 0.25; input too large for double-precision FFT");
    return out;
}

}  // namespace smoothwave
