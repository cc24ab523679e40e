#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpafdm/bigint.hpp"
#include "cpafdm/rng.hpp"

namespace cpafdm {

// Number of derangements D_n, exact: D_n = (n-1)(D_{n-1} + D_{n-2}),
// D_0 = 1, D_1 = 0.
BigUint derangement_count(int n);
std::vector<BigUint> derangement_counts_up_to(int n);

// Distribution of the number of positions l at which a uniformly random
// permutation agrees with a fixed reference.
//
// P_l = C(N,l) * D_{N-l} / N!  (exact rationals over the common denominator
// N! for N <= exact_mode_limit)  =  (1/l!) * sum_{k=0}^{N-l} (-1)^k / k!.
// Both routes are computed and cross-checked to 1e-12.
struct GuessDistribution {
    int n = 0;
    bool exact_mode = false;
    std::vector<double> pmf;        // size n+1
    std::vector<double> cdf_wrong;  // cdf_wrong[l] = P(at most l correct) = P(>= N-l wrong)
    std::vector<double> tail;       // tail[l] = P(more than l correct) = 1 - cdf_wrong[l]
    // Exact-mode numerators over denominator N!; empty when exact_mode is false.
    std::vector<BigUint> numerators;

    static constexpr int exact_mode_limit = 512;
};

GuessDistribution guess_distribution(int n);
double guess_pmf(int n, int l);
double guess_cdf_wrong(int n, int l_max);

// Cost estimates for recovering the permutation key by search.
struct AttackCostReport {
    int n = 0;
    std::string per_eval_cost_order;   // symbolic lambda, e.g. "N^2"
    double classical_log10_evals = 0;  // log10(N!)
    double classical_total_log10 = 0;  // log10(lambda * N!) for lambda = N^k forms
    std::string classical_evals_sci;   // "2.1e13"
    std::string classical_evals_exact; // exact decimal for small N, else empty
    double gas_log10_queries = 0;      // 0.5*log10(N!), summed-logs route
    double gas_log10_queries_stirling = 0;  // closed form (2piN)^(1/4) (N/e)^(N/2)
    std::string gas_queries_sci;
    double logical_qubits = 0;              // log2(N!), summed logs
    double logical_qubits_stirling = 0;     // N log2 N - N log2 e
    double overhead_low = 0;
    double overhead_high = 0;
    double physical_qubits_low = 0;
    double physical_qubits_high = 0;
};

AttackCostReport classical_cost(int n, const std::string& lambda_order = "N^2");
AttackCostReport quantum_cost(int n, double overhead_low = 1e3, double overhead_high = 1e4);
AttackCostReport attack_cost(int n, const std::string& lambda_order = "N^2",
                             double overhead_low = 1e3, double overhead_high = 1e4);

// Uniform random permutation with exactly l positions agreeing with truth:
// choose the agreement set uniformly, then place a uniform derangement of
// the remaining values on the remaining positions (rejection sampled).
// l = n-1 is impossible and rejected.
std::vector<int> sample_perm_with_fixed_points(int n, int l, const std::vector<int>& truth,
                                               Rng& rng);

}  // namespace cpafdm
