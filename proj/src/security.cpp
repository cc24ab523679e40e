#include "cpafdm/security.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace cpafdm {

namespace {

constexpr double kLog10E = 0.43429448190325182765;

double log10_factorial(int n) {
    return std::lgamma(static_cast<double>(n) + 1.0) * kLog10E;
}

// "a.bc e+k" style mantissa/exponent rendering from a log10 value.
std::string sci_from_log10(double log10_value, int sig_digits) {
    double k = std::floor(log10_value);
    double mant = std::pow(10.0, log10_value - k);
    // Rounding can push the mantissa to 10.0; carry into the exponent.
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", sig_digits - 1, mant);
    if (std::string(buf).substr(0, 2) == "10") {
        k += 1;
        std::snprintf(buf, sizeof(buf), "%.*f", sig_digits - 1, 1.0);
    }
    std::string out(buf);
    out += "e" + std::to_string(static_cast<long long>(k));
    return out;
}

// Alternating-series route: (1/l!) * sum_{k=0}^{n-l} (-1)^k / k!, evaluated
// in the log domain so large l stays finite.
double pmf_alternating(int n, int l) {
    double s = 0.0;
    double term = 1.0;
    for (int k = 0; k <= n - l; ++k) {
        if (k > 0) term = -term / static_cast<double>(k);
        s += term;
        if (k > 1 && std::abs(term) < 1e-18 * std::abs(s)) break;
    }
    if (s <= 0.0) return 0.0;
    double log_p = std::log(s) - std::lgamma(static_cast<double>(l) + 1.0);
    return std::exp(log_p);
}

}  // namespace

BigUint derangement_count(int n) {
    if (n < 0) throw std::invalid_argument("derangement_count: n must be >= 0");
    if (n == 0) return BigUint(1);
    if (n == 1) return BigUint(0);
    BigUint prev2(1), prev(0);
    for (int k = 2; k <= n; ++k) {
        BigUint cur = prev + prev2;
        cur.mul_word(static_cast<std::uint32_t>(k - 1));
        prev2 = std::move(prev);
        prev = std::move(cur);
    }
    return prev;
}

std::vector<BigUint> derangement_counts_up_to(int n) {
    std::vector<BigUint> d;
    d.reserve(static_cast<std::size_t>(n) + 1);
    d.emplace_back(1);
    if (n >= 1) d.emplace_back(0);
    for (int k = 2; k <= n; ++k) {
        BigUint cur = d[static_cast<std::size_t>(k - 1)] + d[static_cast<std::size_t>(k - 2)];
        cur.mul_word(static_cast<std::uint32_t>(k - 1));
        d.push_back(std::move(cur));
    }
    return d;
}

GuessDistribution guess_distribution(int n) {
    if (n < 1) throw std::invalid_argument("guess_distribution: n must be >= 1");
    GuessDistribution gd;
    gd.n = n;
    gd.exact_mode = n <= GuessDistribution::exact_mode_limit;
    gd.pmf.assign(static_cast<std::size_t>(n) + 1, 0.0);

    if (gd.exact_mode) {
        // Numerators C(N,l) * D_{N-l} over the common denominator N!.
        std::vector<BigUint> dtab = derangement_counts_up_to(n);
        BigUint nfact = BigUint::factorial(static_cast<unsigned>(n));
        double log2_nfact = nfact.log2();
        gd.numerators.reserve(static_cast<std::size_t>(n) + 1);
        BigUint total(0);
        for (int l = 0; l <= n; ++l) {
            BigUint num = BigUint::binomial(static_cast<unsigned>(n), static_cast<unsigned>(l)) *
                          dtab[static_cast<std::size_t>(n - l)];
            total = total + num;
            double p = num.is_zero() ? 0.0 : std::exp2(num.log2() - log2_nfact);
            gd.pmf[static_cast<std::size_t>(l)] = p;
            gd.numerators.push_back(std::move(num));
        }
        if (!(total == nfact))
            throw std::logic_error("guess_distribution: exact PMF does not sum to 1");
    } else {
        for (int l = 0; l <= n; ++l) gd.pmf[static_cast<std::size_t>(l)] = pmf_alternating(n, l);
    }

    // Cross-check the two routes wherever both are cheap to evaluate.
    if (gd.exact_mode) {
        for (int l = 0; l <= n; ++l) {
            double alt = pmf_alternating(n, l);
            if (std::abs(alt - gd.pmf[static_cast<std::size_t>(l)]) > 1e-12)
                throw std::logic_error("guess_distribution: PMF routes disagree beyond 1e-12");
        }
    }

    gd.tail.assign(static_cast<std::size_t>(n) + 1, 0.0);
    double acc = 0.0;
    for (int l = n; l >= 0; --l) {
        gd.tail[static_cast<std::size_t>(l)] = acc;  // P(more than l correct)
        acc += gd.pmf[static_cast<std::size_t>(l)];
    }
    gd.cdf_wrong.assign(static_cast<std::size_t>(n) + 1, 0.0);
    for (int l = 0; l <= n; ++l)
        gd.cdf_wrong[static_cast<std::size_t>(l)] = 1.0 - gd.tail[static_cast<std::size_t>(l)];
    gd.cdf_wrong[static_cast<std::size_t>(n)] = 1.0;
    return gd;
}

double guess_pmf(int n, int l) {
    if (l < 0 || l > n) throw std::invalid_argument("guess_pmf: l must be in [0, N]");
    return guess_distribution(n).pmf[static_cast<std::size_t>(l)];
}

double guess_cdf_wrong(int n, int l_max) {
    if (l_max < 0 || l_max > n)
        throw std::invalid_argument("guess_cdf_wrong: l_max must be in [0, N]");
    return guess_distribution(n).cdf_wrong[static_cast<std::size_t>(l_max)];
}

AttackCostReport attack_cost(int n, const std::string& lambda_order, double overhead_low,
                             double overhead_high) {
    if (n < 2) throw std::invalid_argument("attack_cost: N must be >= 2");
    AttackCostReport r;
    r.n = n;
    r.per_eval_cost_order = lambda_order;
    r.classical_log10_evals = log10_factorial(n);
    r.classical_evals_sci = sci_from_log10(r.classical_log10_evals, 2);
    if (n <= 64)
        r.classical_evals_exact = BigUint::factorial(static_cast<unsigned>(n)).to_decimal();

    // Numeric total complexity for the lambda = N^k family; other symbols
    // stay symbolic only.
    double lambda_log10 = 0.0;
    if (lambda_order == "N") {
        lambda_log10 = std::log10(static_cast<double>(n));
    } else if (lambda_order.rfind("N^", 0) == 0) {
        lambda_log10 = std::atof(lambda_order.c_str() + 2) * std::log10(static_cast<double>(n));
    }
    r.classical_total_log10 = r.classical_log10_evals + lambda_log10;

    // log2(N!) summed exactly in floating point, plus the truncated
    // Stirling form so its approximation error stays visible.
    double log2_nfact = 0.0;
    for (int k = 2; k <= n; ++k) log2_nfact += std::log2(static_cast<double>(k));
    r.logical_qubits = log2_nfact;
    r.logical_qubits_stirling =
        static_cast<double>(n) * std::log2(static_cast<double>(n)) -
        static_cast<double>(n) * std::log2(std::numbers::e);

    r.gas_log10_queries = 0.5 * r.classical_log10_evals;
    r.gas_log10_queries_stirling =
        0.25 * std::log10(2.0 * std::numbers::pi * n) +
        0.5 * n * std::log10(static_cast<double>(n) / std::numbers::e);
    r.gas_queries_sci = sci_from_log10(r.gas_log10_queries, 2);

    r.overhead_low = overhead_low;
    r.overhead_high = overhead_high;
    r.physical_qubits_low = r.logical_qubits * overhead_low;
    r.physical_qubits_high = r.logical_qubits * overhead_high;
    return r;
}

AttackCostReport classical_cost(int n, const std::string& lambda_order) {
    return attack_cost(n, lambda_order);
}

AttackCostReport quantum_cost(int n, double overhead_low, double overhead_high) {
    return attack_cost(n, "N^2", overhead_low, overhead_high);
}

std::vector<int> sample_perm_with_fixed_points(int n, int l, const std::vector<int>& truth,
                                               Rng& rng) {
    if (static_cast<int>(truth.size()) != n)
        throw std::invalid_argument("sample_perm_with_fixed_points: truth size mismatch");
    if (l < 0 || l > n)
        throw std::invalid_argument("sample_perm_with_fixed_points: l must be in [0, N]");
    if (l == n - 1)
        throw std::invalid_argument(
            "sample_perm_with_fixed_points: exactly N-1 agreements is impossible");
    if (l == n) return truth;

    // Uniform agreement set of size l via partial Fisher-Yates.
    std::vector<int> positions(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) positions[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < l; ++i) {
        auto j = i + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - i)));
        std::swap(positions[static_cast<std::size_t>(i)], positions[static_cast<std::size_t>(j)]);
    }
    std::vector<int> rest(positions.begin() + l, positions.end());

    std::vector<int> out = truth;
    std::vector<int> values(rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i)
        values[i] = truth[static_cast<std::size_t>(rest[i])];

    // Rejection-sample a derangement of the residual values (expected <= e
    // attempts): shuffle until no residual position keeps its truth value.
    std::vector<int> shuffled = values;
    while (true) {
        for (std::size_t i = shuffled.size(); i > 1; --i) {
            auto j = rng.uniform_int(static_cast<std::uint64_t>(i));
            std::swap(shuffled[i - 1], shuffled[j]);
        }
        bool deranged = true;
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (shuffled[i] == values[i]) {
                deranged = false;
                break;
            }
        }
        if (deranged) break;
    }
    for (std::size_t i = 0; i < rest.size(); ++i)
        out[static_cast<std::size_t>(rest[i])] = shuffled[i];
    return out;
}

}  // namespace cpafdm
