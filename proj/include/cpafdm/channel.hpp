#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cpafdm/rng.hpp"

namespace cpafdm {

// One resolvable propagation path: complex gain, integer sample delay,
// normalized digital Doppler (may be fractional).
struct PathParams {
    std::complex<double> gain;
    int delay = 0;
    double doppler = 0.0;
};

// Prefix phase applied to the first `delay` samples of each path term.
// chirp_periodic uses phi(n) = c1*(N^2 - 2*N*n); plain is a cyclic prefix
// with no phase correction (phi = 0).
enum class PrefixPhase { chirp_periodic, plain };

// Circular left-shift matrix power: (Pi^l x)[n] = x[(n+l) mod N], 0/1 entries.
Eigen::MatrixXd shift_matrix_power(int n, int shift);

// Diagonal of Z^f: entry n = e^{-j2*pi*n*f/N}.
Eigen::VectorXcd doppler_phases(int n, double f);
Eigen::MatrixXcd doppler_matrix_power(int n, double f);

// Diagonal of Phi for a path with the given delay: the first `delay`
// entries carry e^{-j2*pi*phi(delay)}, ..., e^{-j2*pi*phi(1)}, the rest 1.
Eigen::VectorXcd prefix_phases(int n, int delay, double c1,
                               PrefixPhase kind = PrefixPhase::chirp_periodic);
Eigen::MatrixXcd prefix_phase_matrix(int n, int delay, double c1,
                                     PrefixPhase kind = PrefixPhase::chirp_periodic);

// Doubly-dispersive circular-convolution channel:
//   H = sum_p h_p * Phi_p * Z^{f_p} * Pi^{l_p}.
// Immutable after construction; the dense matrix is assembled eagerly so
// values are safe to share across Monte Carlo workers.
struct DelayDopplerChannel {
    std::vector<PathParams> paths;
    int n = 0;
    double c1 = 0.0;
    PrefixPhase prefix = PrefixPhase::chirp_periodic;
    Eigen::MatrixXcd matrix;

    std::string to_json() const;
    static DelayDopplerChannel from_json(const std::string& text);
};

DelayDopplerChannel build_channel(std::vector<PathParams> paths, int n, double c1,
                                  PrefixPhase kind = PrefixPhase::chirp_periodic);

struct ChannelScenarioConfig {
    int n = 64;
    int num_paths = 3;
    int max_delay = 3;
    double max_doppler = 1.0;
    bool fractional_doppler = false;
    bool colocated = false;
    std::uint64_t seed = 0;

    void validate() const;
};

// Draws Bob's and Eve's channels. Gains are complex Gaussian with variance
// 1/P, delays uniform integers in [0, max_delay] with the first path at
// delay 0, Dopplers uniform in [-max_doppler, max_doppler] (rounded to
// integers unless fractional_doppler). colocated makes Eve's channel the
// same realization as Bob's.
std::pair<DelayDopplerChannel, DelayDopplerChannel> sample_channel(
    const ChannelScenarioConfig& config, Rng& rng, double c1,
    PrefixPhase kind = PrefixPhase::chirp_periodic);

}  // namespace cpafdm
