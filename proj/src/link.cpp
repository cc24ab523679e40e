#include "cpafdm/link.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cpafdm {

namespace {
using cxd = std::complex<double>;

// Binary-reflected Gray decode.
unsigned gray_to_binary(unsigned g) {
    unsigned b = 0;
    for (; g; g >>= 1) b ^= g;
    return b;
}

}  // namespace

Constellation::Constellation(std::string name, int bits_per_axis, bool single_axis)
    : name_(std::move(name)) {
    int levels = 1 << bits_per_axis;
    bits_per_symbol_ = single_axis ? bits_per_axis : 2 * bits_per_axis;
    int m = 1 << bits_per_symbol_;
    // Amplitude for Gray-sequence position k: (L-1) - 2k, so label 0 is the
    // most positive level. Per-axis mean square is (L^2-1)/3.
    auto level_for = [&](unsigned label_bits) {
        unsigned k = gray_to_binary(label_bits);
        return static_cast<double>(levels - 1) - 2.0 * static_cast<double>(k);
    };
    double axis_energy = (static_cast<double>(levels) * levels - 1.0) / 3.0;
    double energy = single_axis ? axis_energy : 2.0 * axis_energy;
    double scale = 1.0 / std::sqrt(energy);
    points_.resize(static_cast<std::size_t>(m));
    for (int s = 0; s < m; ++s) {
        if (single_axis) {
            points_[static_cast<std::size_t>(s)] = scale * cxd(level_for(static_cast<unsigned>(s)), 0.0);
        } else {
            unsigned i_bits = static_cast<unsigned>(s) >> bits_per_axis;
            unsigned q_bits = static_cast<unsigned>(s) & ((1u << bits_per_axis) - 1u);
            points_[static_cast<std::size_t>(s)] = scale * cxd(level_for(i_bits), level_for(q_bits));
        }
    }
}

Constellation Constellation::bpsk() { return Constellation("bpsk", 1, true); }
Constellation Constellation::qpsk() { return Constellation("qpsk", 1, false); }
Constellation Constellation::qam16() { return Constellation("16qam", 2, false); }
Constellation Constellation::qam64() { return Constellation("64qam", 3, false); }

Constellation Constellation::from_name(const std::string& name) {
    if (name == "bpsk") return bpsk();
    if (name == "qpsk") return qpsk();
    if (name == "16qam") return qam16();
    if (name == "64qam") return qam64();
    throw std::invalid_argument("unknown constellation \"" + name +
                                "\" (expected bpsk, qpsk, 16qam or 64qam)");
}

int Constellation::nearest_index(cxd v) const {
    int best = 0;
    double best_d2 = std::norm(v - points_[0]);
    for (int i = 1; i < size(); ++i) {
        double d2 = std::norm(v - points_[static_cast<std::size_t>(i)]);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return best;
}

Eigen::VectorXcd Constellation::map_bits(const std::vector<std::uint8_t>& bits) const {
    if (bits.size() % static_cast<std::size_t>(bits_per_symbol_) != 0)
        throw std::invalid_argument("map_bits: bit count not divisible by bits per symbol");
    Eigen::Index n = static_cast<Eigen::Index>(bits.size()) / bits_per_symbol_;
    Eigen::VectorXcd out(n);
    for (Eigen::Index s = 0; s < n; ++s) {
        unsigned label = 0;
        for (int b = 0; b < bits_per_symbol_; ++b) {
            std::uint8_t bit = bits[static_cast<std::size_t>(s) * bits_per_symbol_ + b];
            if (bit > 1) throw std::invalid_argument("map_bits: bits must be 0 or 1");
            label = (label << 1) | bit;
        }
        out(s) = points_[label];
    }
    return out;
}

std::vector<std::uint8_t> Constellation::demap_symbols(const Eigen::VectorXcd& symbols) const {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(symbols.size()) * bits_per_symbol_);
    for (Eigen::Index s = 0; s < symbols.size(); ++s) {
        unsigned label = static_cast<unsigned>(nearest_index(symbols(s)));
        for (int b = 0; b < bits_per_symbol_; ++b) {
            bits[static_cast<std::size_t>(s) * bits_per_symbol_ + b] =
                static_cast<std::uint8_t>((label >> (bits_per_symbol_ - 1 - b)) & 1u);
        }
    }
    return bits;
}

Frame make_frame(std::vector<std::uint8_t> bits, const Constellation& constellation,
                 const DaftTransform& daft, double noise_variance) {
    Frame f;
    f.bits = std::move(bits);
    f.symbols = constellation.map_bits(f.bits);
    f.tx_signal = modulate(f.symbols, daft);
    f.noise_variance = noise_variance;
    return f;
}

Eigen::VectorXcd modulate(const Eigen::VectorXcd& symbols, const DaftTransform& daft) {
    return daft.inverse(symbols);
}

Eigen::VectorXcd receive(const Eigen::VectorXcd& s, const Eigen::MatrixXcd& h, double sigma2,
                         Rng& rng) {
    if (h.cols() != s.size()) throw std::invalid_argument("receive: dimension mismatch");
    if (sigma2 < 0) throw std::invalid_argument("receive: sigma2 must be >= 0");
    Eigen::VectorXcd r = h * s;
    if (sigma2 > 0) {
        for (Eigen::Index i = 0; i < r.size(); ++i) r(i) += rng.complex_gaussian(sigma2);
    }
    return r;
}

Eigen::VectorXcd receive(const Eigen::VectorXcd& s, const DelayDopplerChannel& channel,
                         double sigma2, Rng& rng) {
    return receive(s, channel.matrix, sigma2, rng);
}

Eigen::VectorXcd demodulate(const Eigen::VectorXcd& r, const DaftTransform& daft) {
    return daft.forward(r);
}

EffectiveChannel effective_channel(const Eigen::MatrixXcd& h, const ChirpProfile& profile,
                                   const PermutationKey& key) {
    if (h.rows() != profile.n || h.cols() != profile.n)
        throw std::invalid_argument("effective_channel: H size does not match profile N");
    if (key.n() != profile.n)
        throw std::invalid_argument("effective_channel: key size does not match profile N");
    Eigen::MatrixXcd f = dft_matrix(profile.n);
    Eigen::VectorXcd lam1 = chirp_vector(profile.c1, profile.n);
    Eigen::MatrixXcd inner = lam1.asDiagonal() * h * lam1.conjugate().asDiagonal();
    Eigen::MatrixXcd xi = f * inner * f.adjoint();
    Eigen::VectorXcd p2 = apply_permutation(chirp_vector(profile.c2, profile.n), key.perm());
    Eigen::MatrixXcd g = p2.asDiagonal() * xi * p2.conjugate().asDiagonal();
    return EffectiveChannel{std::move(g), std::move(xi), key};
}

EffectiveChannel effective_channel(const DelayDopplerChannel& channel,
                                   const ChirpProfile& profile, const PermutationKey& key) {
    return effective_channel(channel.matrix, profile, key);
}

Eigen::VectorXcd ml_detect(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& g,
                           const Constellation& constellation) {
    const int n = static_cast<int>(g.cols());
    if (y.size() != g.rows()) throw std::invalid_argument("ml_detect: dimension mismatch");
    const int m = constellation.size();
    double log2_space = static_cast<double>(n) * std::log2(static_cast<double>(m));
    if (log2_space > 20.0 + 1e-9)
        throw std::invalid_argument(
            "ml_detect: search space M^N exceeds 2^20; use mmse_equalize instead");

    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    Eigen::VectorXcd x = Eigen::VectorXcd::Constant(n, constellation.point(0));
    Eigen::VectorXcd t = g * x;

    Eigen::VectorXcd best_x = x;
    double best_cost = (y - t).squaredNorm();
    // Odometer over candidate indices, least-significant position = last
    // symbol, so enumeration order equals the big-endian candidate index.
    // Each step changes one symbol: update t by the changed column.
    while (true) {
        int pos = n - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - 1) {
            t += g.col(pos) * (constellation.point(0) - x(pos));
            x(pos) = constellation.point(0);
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        int next = ++idx[static_cast<std::size_t>(pos)];
        t += g.col(pos) * (constellation.point(next) - x(pos));
        x(pos) = constellation.point(next);
        double cost = (y - t).squaredNorm();
        if (cost < best_cost) {
            best_cost = cost;
            best_x = x;
        }
    }
    return best_x;
}

Eigen::VectorXcd mmse_equalize(const Eigen::VectorXcd& r, const Eigen::MatrixXcd& h,
                               double sigma2, const DaftTransform& daft) {
    if (h.rows() != r.size()) throw std::invalid_argument("mmse_equalize: dimension mismatch");
    if (sigma2 < 0) throw std::invalid_argument("mmse_equalize: sigma2 must be >= 0");
    Eigen::VectorXcd u;
    if (sigma2 == 0.0) {
        // Zero-forcing limit: H^H (H H^H)^{-1} = H^{-1} for invertible H.
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(h);
        if (!lu.isInvertible())
            throw std::runtime_error(
                "mmse_equalize: channel is singular at sigma2 = 0; use a ridge sigma2 > 0");
        return daft.forward(lu.solve(r));
    }
    Eigen::MatrixXcd b = h * h.adjoint();
    b.diagonal().array() += sigma2;
    Eigen::LLT<Eigen::MatrixXcd> llt(b);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("mmse_equalize: Cholesky factorization failed");
    u = llt.solve(r);
    return daft.forward(h.adjoint() * u);
}

}  // namespace cpafdm
