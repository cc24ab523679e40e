#include "cpafdm/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cpafdm {

namespace {
using cxd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double frac_of_product(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    double f = (p - std::floor(p)) + err;
    f -= std::floor(f);
    return f;
}

Eigen::MatrixXcd dft_matrix(int n) {
    if (n < 1) throw std::invalid_argument("dft_matrix: N must be >= 1");
    Eigen::MatrixXcd f(n, n);
    double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            long long mk = (static_cast<long long>(m) * k) % n;
            double a = -kTwoPi * static_cast<double>(mk) / static_cast<double>(n);
            f(m, k) = s * cxd(std::cos(a), std::sin(a));
        }
    }
    return f;
}

Eigen::VectorXcd chirp_vector(double c, int n) {
    if (n < 1) throw std::invalid_argument("chirp_vector: N must be >= 1");
    Eigen::VectorXcd v(n);
    for (int k = 0; k < n; ++k) {
        double f = frac_of_product(c, static_cast<double>(k) * k);
        double a = -kTwoPi * f;
        v(k) = cxd(std::cos(a), std::sin(a));
    }
    return v;
}

ChirpProfile::ChirpProfile(int n_, double c1_, double c2_) : n(n_), c1(c1_), c2(c2_) {
    if (n < 2) throw std::invalid_argument("ChirpProfile: N must be >= 2");
}

double ChirpProfile::default_c1(int n, double max_doppler) {
    double alpha = std::ceil(max_doppler);
    return (2.0 * alpha + 1.0) / (2.0 * n);
}

double ChirpProfile::default_c2() { return (std::sqrt(5.0) - 1.0) / 2.0; }

ChirpProfile ChirpProfile::with_defaults(int n, double max_doppler) {
    ChirpProfile p(n, default_c1(n, max_doppler), default_c2());
    p.require_distinct_second_chirp();
    return p;
}

double ChirpProfile::min_second_chirp_gap() const {
    // Entries live on the unit circle at angle -2*pi*frac(c2*k^2); the
    // minimum chord distance is read off the sorted fractional phases.
    std::vector<double> fracs(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        fracs[static_cast<std::size_t>(k)] = frac_of_product(c2, static_cast<double>(k) * k);
    std::sort(fracs.begin(), fracs.end());
    double min_gap_turns = 1.0 - (fracs.back() - fracs.front());
    for (std::size_t i = 1; i < fracs.size(); ++i)
        min_gap_turns = std::min(min_gap_turns, fracs[i] - fracs[i - 1]);
    if (min_gap_turns > 0.5) min_gap_turns = 0.5;
    return 2.0 * std::sin(std::numbers::pi * min_gap_turns);
}

void ChirpProfile::require_distinct_second_chirp(double min_distance) const {
    double gap = min_second_chirp_gap();
    if (!(gap > min_distance)) {
        std::ostringstream os;
        os << "second chirp entries are not pairwise distinct (min gap " << gap
           << " <= " << min_distance << " at c2 = " << c2
           << "); distinct permutation keys would collapse to identical waveforms";
        throw std::invalid_argument(os.str());
    }
}

PermutationKey PermutationKey::identity(int n) {
    if (n < 1) throw std::invalid_argument("PermutationKey: N must be >= 1");
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    return PermutationKey(std::move(p), BigUint(0), n);
}

PermutationKey PermutationKey::from_rank(const BigUint& rank, int n) {
    return rank_to_perm(rank, n);
}

PermutationKey PermutationKey::from_perm(std::vector<int> perm) {
    BigUint rank = perm_to_rank(perm);
    int n = static_cast<int>(perm.size());
    return PermutationKey(std::move(perm), std::move(rank), n);
}

PermutationKey PermutationKey::random(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("PermutationKey: N must be >= 1");
    // Draw the lexicographic factoradic digits d_j ~ U{0..N-1-j} and apply
    // them as selections from the ascending pool; accumulating the digits
    // Horner-style yields the rank of the very same permutation.
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    std::vector<int> perm;
    perm.reserve(static_cast<std::size_t>(n));
    BigUint rank(0);
    for (int j = 0; j < n; ++j) {
        auto d = static_cast<std::uint32_t>(rng.uniform_int(static_cast<std::uint64_t>(n - j)));
        rank.mul_word(static_cast<std::uint32_t>(n - j));
        rank.add_word(d);
        perm.push_back(pool[d]);
        pool.erase(pool.begin() + d);
    }
    return PermutationKey(std::move(perm), std::move(rank), n);
}

bool PermutationKey::is_identity() const { return rank_.is_zero(); }

int PermutationKey::fixed_points_vs(const PermutationKey& other) const {
    if (other.n_ != n_) throw std::invalid_argument("fixed_points_vs: size mismatch");
    int count = 0;
    for (int i = 0; i < n_; ++i)
        if (perm_[static_cast<std::size_t>(i)] == other.perm_[static_cast<std::size_t>(i)]) ++count;
    return count;
}

std::string PermutationKey::perm_string() const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < n_; ++i) {
        if (i) os << ',';
        os << perm_[static_cast<std::size_t>(i)];
    }
    os << ']';
    return os.str();
}

PermutationKey rank_to_perm(const BigUint& rank, int n) {
    if (n < 1) throw std::invalid_argument("rank_to_perm: N must be >= 1");
    // Cheap log-domain screen before the exact factoradic decode.
    double log2_nfact = (std::lgamma(static_cast<double>(n) + 1.0)) / std::numbers::ln2;
    auto out_of_range = [&]() {
        std::ostringstream os;
        os << "rank out of range for N = " << n << ": valid interval is [0, N!-1]";
        if (n <= 20)
            os << " = [0, " << (BigUint::factorial(static_cast<unsigned>(n)) - BigUint(1)).to_decimal() << "]";
        else
            os << ", N! ~ 10^" << static_cast<long long>(log2_nfact * 0.30102999566398119);
        throw std::invalid_argument(os.str());
    };
    if (static_cast<double>(rank.bit_length()) > log2_nfact + 2.0) out_of_range();

    // Least-significant factoradic digits via small divmods: c_k = q mod (k+1).
    BigUint q = rank;
    std::vector<std::uint32_t> digits(static_cast<std::size_t>(n), 0);  // digits[k] = c_k, c_0 = 0
    for (int k = 1; k < n; ++k)
        digits[static_cast<std::size_t>(k)] = q.divmod_word(static_cast<std::uint32_t>(k + 1));
    if (!q.is_zero()) out_of_range();

    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    std::vector<int> perm;
    perm.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        std::uint32_t d = digits[static_cast<std::size_t>(n - 1 - j)];
        perm.push_back(pool[d]);
        pool.erase(pool.begin() + d);
    }
    return PermutationKey::from_perm(std::move(perm));
}

BigUint perm_to_rank(const std::vector<int>& perm) {
    int n = static_cast<int>(perm.size());
    if (n < 1) throw std::invalid_argument("perm_to_rank: empty permutation");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        int v = perm[static_cast<std::size_t>(i)];
        if (v < 0 || v >= n) {
            std::ostringstream os;
            os << "perm is not a bijection on {0..." << n - 1 << "}: value " << v
               << " at index " << i << " is out of range";
            throw std::invalid_argument(os.str());
        }
        if (seen[static_cast<std::size_t>(v)]) {
            std::ostringstream os;
            os << "perm is not a bijection: value " << v << " appears more than once";
            throw std::invalid_argument(os.str());
        }
        seen[static_cast<std::size_t>(v)] = 1;
    }
    // Lehmer digits d_j = #{k > j : perm[k] < perm[j]}, folded Horner-style.
    BigUint rank(0);
    for (int j = 0; j < n; ++j) {
        std::uint32_t d = 0;
        for (int k = j + 1; k < n; ++k)
            if (perm[static_cast<std::size_t>(k)] < perm[static_cast<std::size_t>(j)]) ++d;
        rank.mul_word(static_cast<std::uint32_t>(n - j));
        rank.add_word(d);
    }
    return rank;
}

Eigen::VectorXcd apply_permutation(const Eigen::VectorXcd& v, const std::vector<int>& perm) {
    if (static_cast<std::size_t>(v.size()) != perm.size())
        throw std::invalid_argument("apply_permutation: size mismatch");
    Eigen::VectorXcd out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out(i) = v(perm[static_cast<std::size_t>(i)]);
    return out;
}

DaftMatrix daft(const ChirpProfile& profile, const PermutationKey& key, Direction direction) {
    if (key.n() != profile.n)
        throw std::invalid_argument("daft: key size does not match profile N");
    Eigen::MatrixXcd f = dft_matrix(profile.n);
    Eigen::VectorXcd lam1 = chirp_vector(profile.c1, profile.n);
    Eigen::VectorXcd lam2 = apply_permutation(chirp_vector(profile.c2, profile.n), key.perm());
    Eigen::MatrixXcd a = lam2.asDiagonal() * f * lam1.asDiagonal();
    if (direction == Direction::inverse) a = a.adjoint().eval();
    return DaftMatrix{std::move(a), profile, key, direction};
}

DaftTransform::DaftTransform(const ChirpProfile& profile, const PermutationKey& key)
    : profile_(profile),
      key_(key),
      chirp1_(chirp_vector(profile.c1, profile.n)),
      chirp2_permuted_(apply_permutation(chirp_vector(profile.c2, profile.n), key.perm())),
      fft_(profile.n) {
    if (key.n() != profile.n)
        throw std::invalid_argument("DaftTransform: key size does not match profile N");
}

Eigen::VectorXcd DaftTransform::forward(const Eigen::VectorXcd& x) const {
    if (x.size() != profile_.n) throw std::invalid_argument("DaftTransform: input size mismatch");
    Eigen::VectorXcd t = chirp1_.cwiseProduct(x);
    fft_.unitary_forward(t.data());
    return chirp2_permuted_.cwiseProduct(t);
}

Eigen::VectorXcd DaftTransform::inverse(const Eigen::VectorXcd& x) const {
    if (x.size() != profile_.n) throw std::invalid_argument("DaftTransform: input size mismatch");
    Eigen::VectorXcd t = chirp2_permuted_.conjugate().cwiseProduct(x);
    fft_.unitary_inverse(t.data());
    return chirp1_.conjugate().cwiseProduct(t);
}

}  // namespace cpafdm
