#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cpafdm/bigint.hpp"
#include "cpafdm/fft.hpp"
#include "cpafdm/rng.hpp"

namespace cpafdm {

// Fractional part of a*b computed with an fma-split product, accurate to a
// few ulps of 1 even when a*b is large. Keeps chirp/Doppler phase arguments
// well conditioned before the 2*pi scaling.
double frac_of_product(double a, double b);

// Normalized N-point DFT matrix, entry (m,n) = e^{-j2*pi*m*n/N} / sqrt(N).
Eigen::MatrixXcd dft_matrix(int n);

// Chirp vector with digital frequency c: entry n = e^{-j2*pi*c*n^2}.
Eigen::VectorXcd chirp_vector(double c, int n);

// System-level waveform parameters. c1 sets the delay-Doppler diversity
// tuning; c2 parameterizes the second (permutable) chirp. Both are free
// parameters of the transform; the keyspace is only meaningful when the
// second chirp has pairwise-distinct entries, which callers on the secure
// path check via require_distinct_second_chirp().
struct ChirpProfile {
    int n = 0;
    double c1 = 0.0;
    double c2 = 0.0;

    ChirpProfile(int n, double c1, double c2);

    // (2*ceil(f_max)+1)/(2N): full-diversity tuning for Dopplers up to f_max.
    static double default_c1(int n, double max_doppler);
    // Golden-ratio conjugate. Badly approximable by rationals, which makes
    // the second-chirp entries provably distinct (min gap ~ 2*pi/(sqrt(5)N^2))
    // while spreading mismatched-key phase rotations over the whole circle.
    static double default_c2();
    static ChirpProfile with_defaults(int n, double max_doppler = 1.0);

    // Minimum pairwise chord distance between entries of the second chirp.
    double min_second_chirp_gap() const;
    void require_distinct_second_chirp(double min_distance = 1e-9) const;
};

// A permutation of {0..N-1} together with its rank in lexicographic order.
// Rank 0 is the identity; the one-based order used in user-facing output is
// rank + 1. Construction enforces rank/perm consistency.
class PermutationKey {
public:
    static PermutationKey identity(int n);
    static PermutationKey from_rank(const BigUint& rank, int n);
    static PermutationKey from_perm(std::vector<int> perm);
    // Uniform over all N! keys via uniform factoradic digits (rejection-free).
    static PermutationKey random(int n, Rng& rng);

    int n() const { return n_; }
    const std::vector<int>& perm() const { return perm_; }
    const BigUint& rank() const { return rank_; }
    BigUint order() const { return rank_ + BigUint(1); }
    bool is_identity() const;
    int fixed_points_vs(const PermutationKey& other) const;
    std::string perm_string() const;  // "[0,2,1]"

private:
    PermutationKey(std::vector<int> perm, BigUint rank, int n)
        : perm_(std::move(perm)), rank_(std::move(rank)), n_(n) {}

    std::vector<int> perm_;
    BigUint rank_;
    int n_ = 0;
};

// Lexicographic (un)ranking through the factorial number system.
// rank_to_perm rejects rank >= N! naming the valid interval; perm_to_rank
// rejects non-bijections naming the offending index.
PermutationKey rank_to_perm(const BigUint& rank, int n);
BigUint perm_to_rank(const std::vector<int>& perm);

// out[i] = v[perm[i]]; perm(vector, order) in the ascending-order convention.
Eigen::VectorXcd apply_permutation(const Eigen::VectorXcd& v, const std::vector<int>& perm);

enum class Direction { forward, inverse };

// Dense permuted DAFT matrix:
//   forward = diag(perm(lambda_c2)) * F * diag(lambda_c1),
//   inverse = its conjugate transpose.
struct DaftMatrix {
    Eigen::MatrixXcd matrix;
    ChirpProfile profile;
    PermutationKey key;
    Direction direction;
};

DaftMatrix daft(const ChirpProfile& profile, const PermutationKey& key, Direction direction);

// O(N log N) application of the permuted DAFT pair without materializing
// the matrix; agrees with the dense route to ~1e-12. This is the hot path
// of the Monte Carlo engine.
class DaftTransform {
public:
    DaftTransform(const ChirpProfile& profile, const PermutationKey& key);

    const ChirpProfile& profile() const { return profile_; }
    const PermutationKey& key() const { return key_; }

    Eigen::VectorXcd forward(const Eigen::VectorXcd& x) const;  // A * x
    Eigen::VectorXcd inverse(const Eigen::VectorXcd& x) const;  // A^H * x

private:
    ChirpProfile profile_;
    PermutationKey key_;
    Eigen::VectorXcd chirp1_;
    Eigen::VectorXcd chirp2_permuted_;
    Fft fft_;
};

}  // namespace cpafdm
