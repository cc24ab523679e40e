#include "cpafdm/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace cpafdm {

namespace {

using cxd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int next_pow2(int n) {
    int m = 1;
    while (m < n) m <<= 1;
    return m;
}

// Twiddle table e^{-j2*pi*k/m} for k < m/2. Arguments are exact dyadic
// fractions of 2*pi, so entries are accurate to one rounding of sin/cos.
std::vector<cxd> make_twiddle(int m) {
    std::vector<cxd> tw(static_cast<std::size_t>(std::max(1, m / 2)));
    for (int k = 0; k < m / 2; ++k) {
        double a = -kTwoPi * static_cast<double>(k) / static_cast<double>(m);
        tw[static_cast<std::size_t>(k)] = {std::cos(a), std::sin(a)};
    }
    return tw;
}

}  // namespace

Fft::Fft(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("Fft size must be >= 1");
    pow2_ = is_pow2(n);
    if (pow2_) {
        twiddle_ = make_twiddle(n);
        return;
    }
    m_ = next_pow2(2 * n - 1);
    twiddle_ = make_twiddle(m_);
    chirp_.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        // pi*k^2/N with k^2 reduced mod 2N keeps the argument small and exact.
        long long k2 = (static_cast<long long>(k) * k) % (2LL * n);
        double a = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
        chirp_[static_cast<std::size_t>(k)] = {std::cos(a), std::sin(a)};
    }
    std::vector<cxd> b(static_cast<std::size_t>(m_), cxd(0.0, 0.0));
    b[0] = std::conj(chirp_[0]);
    for (int k = 1; k < n; ++k) {
        b[static_cast<std::size_t>(k)] = std::conj(chirp_[static_cast<std::size_t>(k)]);
        b[static_cast<std::size_t>(m_ - k)] = std::conj(chirp_[static_cast<std::size_t>(k)]);
    }
    pow2_forward(b.data(), m_, twiddle_);
    chirp_kernel_ = std::move(b);
}

void Fft::pow2_forward(cxd* x, int m, const std::vector<cxd>& twiddle) const {
    // Bit-reversal permutation
    for (int i = 1, j = 0; i < m; ++i) {
        int bit = m >> 1;
        while (j & bit) {
            j ^= bit;
            bit >>= 1;
        }
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (int len = 2; len <= m; len <<= 1) {
        int step = m / len;
        for (int i = 0; i < m; i += len) {
            for (int k = 0; k < len / 2; ++k) {
                cxd w = twiddle[static_cast<std::size_t>(k * step)];
                cxd u = x[i + k];
                cxd v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
            }
        }
    }
}

void Fft::forward(cxd* data) const {
    if (n_ == 1) return;
    if (pow2_) {
        pow2_forward(data, n_, twiddle_);
        return;
    }
    // Bluestein: X_k = chirp_k * IFFT_M(FFT_M(x.*chirp) .* kernel)[k]
    std::vector<cxd> a(static_cast<std::size_t>(m_), cxd(0.0, 0.0));
    for (int k = 0; k < n_; ++k)
        a[static_cast<std::size_t>(k)] = data[k] * chirp_[static_cast<std::size_t>(k)];
    pow2_forward(a.data(), m_, twiddle_);
    for (int k = 0; k < m_; ++k)
        a[static_cast<std::size_t>(k)] *= chirp_kernel_[static_cast<std::size_t>(k)];
    // Inverse size-M FFT via conjugation
    for (auto& v : a) v = std::conj(v);
    pow2_forward(a.data(), m_, twiddle_);
    double scale = 1.0 / static_cast<double>(m_);
    for (int k = 0; k < n_; ++k)
        data[k] = std::conj(a[static_cast<std::size_t>(k)]) * scale *
                  chirp_[static_cast<std::size_t>(k)];
}

void Fft::inverse(cxd* data) const {
    for (int k = 0; k < n_; ++k) data[k] = std::conj(data[k]);
    forward(data);
    for (int k = 0; k < n_; ++k) data[k] = std::conj(data[k]);
}

void Fft::unitary_forward(cxd* data) const {
    forward(data);
    double s = 1.0 / std::sqrt(static_cast<double>(n_));
    for (int k = 0; k < n_; ++k) data[k] *= s;
}

void Fft::unitary_inverse(cxd* data) const {
    inverse(data);
    double s = 1.0 / std::sqrt(static_cast<double>(n_));
    for (int k = 0; k < n_; ++k) data[k] *= s;
}

}  // namespace cpafdm
