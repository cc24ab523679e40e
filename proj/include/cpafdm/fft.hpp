#pragma once

#include <complex>
#include <vector>

namespace cpafdm {

// Fixed-size complex FFT plan. Power-of-two sizes run the iterative
// radix-2 kernel; any other size goes through Bluestein's chirp-z
// expansion onto a power-of-two convolution.
//
// forward() computes X_k = sum_n x_n e^{-j2*pi*n*k/N} (unnormalized);
// inverse() the conjugate sum. The unitary_* variants scale by 1/sqrt(N)
// and pair up as mutual inverses.
class Fft {
public:
    explicit Fft(int n);

    int size() const { return n_; }

    void forward(std::complex<double>* data) const;
    void inverse(std::complex<double>* data) const;

    void unitary_forward(std::complex<double>* data) const;
    void unitary_inverse(std::complex<double>* data) const;

private:
    void pow2_forward(std::complex<double>* data, int m,
                      const std::vector<std::complex<double>>& twiddle) const;

    int n_ = 0;
    bool pow2_ = false;
    std::vector<std::complex<double>> twiddle_;       // e^{-j2*pi*k/M}, k < M/2

    // Bluestein state (non-power-of-two sizes)
    int m_ = 0;                                       // convolution length
    std::vector<std::complex<double>> chirp_;         // e^{-j*pi*n^2/N}, n < N
    std::vector<std::complex<double>> chirp_kernel_;  // forward FFT of padded conj chirp
};

}  // namespace cpafdm
