#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cpafdm/channel.hpp"
#include "cpafdm/rng.hpp"
#include "cpafdm/transforms.hpp"

namespace cpafdm {

// Gray-labeled square constellation with unit average energy.
//
// Bit convention: a symbol label of m bits splits into [I bits | Q bits]
// (first half drives the real axis), each half binary-reflected Gray
// decoded to an amplitude level, ordered so the all-zero label lands on the
// most positive level. QPSK therefore maps bits 00 -> (1+j)/sqrt(2).
class Constellation {
public:
    static Constellation bpsk();
    static Constellation qpsk();
    static Constellation qam16();
    static Constellation qam64();
    static Constellation from_name(const std::string& name);  // "bpsk","qpsk","16qam","64qam"

    const std::string& name() const { return name_; }
    int size() const { return static_cast<int>(points_.size()); }
    int bits_per_symbol() const { return bits_per_symbol_; }
    const std::vector<std::complex<double>>& points() const { return points_; }
    std::complex<double> point(int index) const { return points_[static_cast<std::size_t>(index)]; }

    // Nearest constellation index by Euclidean distance; ties break toward
    // the lowest index.
    int nearest_index(std::complex<double> v) const;

    Eigen::VectorXcd map_bits(const std::vector<std::uint8_t>& bits) const;
    std::vector<std::uint8_t> demap_symbols(const Eigen::VectorXcd& symbols) const;

private:
    Constellation(std::string name, int bits_per_axis, bool single_axis);

    std::string name_;
    int bits_per_symbol_ = 0;
    std::vector<std::complex<double>> points_;
};

// One transmission: payload bits, mapped symbols, and the modulated
// time-domain signal.
struct Frame {
    std::vector<std::uint8_t> bits;
    Eigen::VectorXcd symbols;
    Eigen::VectorXcd tx_signal;
    double noise_variance = 0.0;
};

Frame make_frame(std::vector<std::uint8_t> bits, const Constellation& constellation,
                 const DaftTransform& daft, double noise_variance);

// s = A_key^{-1} x
Eigen::VectorXcd modulate(const Eigen::VectorXcd& symbols, const DaftTransform& daft);

// r = H s + w, w circularly-symmetric complex Gaussian with per-component
// variance sigma2.
Eigen::VectorXcd receive(const Eigen::VectorXcd& s, const Eigen::MatrixXcd& h, double sigma2,
                         Rng& rng);
Eigen::VectorXcd receive(const Eigen::VectorXcd& s, const DelayDopplerChannel& channel,
                         double sigma2, Rng& rng);

// y = A_key r
Eigen::VectorXcd demodulate(const Eigen::VectorXcd& r, const DaftTransform& daft);

// Effective channel of the matched permuted transform:
//   intermediate = F * diag(l1) * H * diag(l1)^H * F^H
//   matrix       = diag(p2) * intermediate * diag(p2)^H
// The diagonal conjugation preserves entrywise magnitudes, so the support
// pattern of `matrix` equals that of `intermediate` for every key.
struct EffectiveChannel {
    Eigen::MatrixXcd matrix;        // G
    Eigen::MatrixXcd intermediate;  // before the second chirp domain
    PermutationKey key;
};

EffectiveChannel effective_channel(const Eigen::MatrixXcd& h, const ChirpProfile& profile,
                                   const PermutationKey& key);
EffectiveChannel effective_channel(const DelayDopplerChannel& channel,
                                   const ChirpProfile& profile, const PermutationKey& key);

// Exhaustive ML detection over all M^N candidates of x minimizing
// ||y - G x||^2. Guarded to M^N <= 2^20; ties break toward the lowest
// candidate index (big-endian symbol-index integer).
Eigen::VectorXcd ml_detect(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& g,
                           const Constellation& constellation);

// Time-domain MMSE equalization: A_key * H^H (H H^H + sigma2 I)^{-1} r.
// sigma2 = 0 is the zero-forcing limit and requires invertible H.
Eigen::VectorXcd mmse_equalize(const Eigen::VectorXcd& r, const Eigen::MatrixXcd& h,
                               double sigma2, const DaftTransform& daft);

}  // namespace cpafdm
