// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Run a single criterion with --criterion NAME.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cpafdm/channel.hpp"
#include "cpafdm/link.hpp"
#include "cpafdm/report_io.hpp"
#include "cpafdm/security.hpp"
#include "cpafdm/sim.hpp"
#include "cpafdm/transforms.hpp"

using namespace cpafdm;

namespace {

struct CheckResult {
    bool pass = true;
    std::ostringstream detail;
};

void expect(CheckResult& r, bool ok, const std::string& what) {
    r.detail << (ok ? "    ok  : " : "    FAIL: ") << what << '\n';
    if (!ok) r.pass = false;
}

// ---------------------------------------------------------------------------

CheckResult criterion_unitarity() {
    CheckResult r;
    Rng rng(20240901);
    double worst = 0.0;
    for (int round = 0; round < 100; ++round) {
        int n = 4 + static_cast<int>(rng.uniform_int(125));  // N in {4..128}
        ChirpProfile p(n, rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        PermutationKey key = PermutationKey::random(n, rng);
        Eigen::MatrixXcd a = daft(p, key, Direction::forward).matrix;
        double err = (a * a.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
        worst = std::max(worst, err);
    }
    std::ostringstream os;
    os << "max ||A A^H - I|| over 100 random (N, c1, c2, key) tuples = " << worst
       << " (tolerance 1e-10)";
    expect(r, worst < 1e-10, os.str());
    return r;
}

CheckResult criterion_codec() {
    CheckResult r;
    // Ascending-order convention, the three listed N=3 cases.
    expect(r, rank_to_perm(BigUint(0), 3).perm() == std::vector<int>{0, 1, 2},
           "order 1 is the identity [x1,x2,x3]");
    expect(r, rank_to_perm(BigUint(1), 3).perm() == std::vector<int>{0, 2, 1},
           "order 2 is [x1,x3,x2]");
    expect(r, rank_to_perm(BigUint(2), 3).perm() == std::vector<int>{1, 0, 2},
           "order 3 is [x2,x1,x3]");

    bool all_roundtrip = true;
    bool all_lex = true;
    for (int n = 1; n <= 7 && all_roundtrip; ++n) {
        std::uint64_t nfact = BigUint::factorial(static_cast<unsigned>(n)).to_u64();
        std::vector<int> prev;
        for (std::uint64_t rank = 0; rank < nfact; ++rank) {
            PermutationKey key = rank_to_perm(BigUint(rank), n);
            if (perm_to_rank(key.perm()).to_u64() != rank) {
                all_roundtrip = false;
                break;
            }
            if (!prev.empty() &&
                !std::lexicographical_compare(prev.begin(), prev.end(), key.perm().begin(),
                                              key.perm().end()))
                all_lex = false;
            prev = key.perm();
        }
    }
    expect(r, all_roundtrip, "rank -> perm -> rank round-trips over all N! ranks for N <= 7");
    expect(r, all_lex, "rank order is lexicographic permutation order");
    return r;
}

CheckResult criterion_structural_invariance() {
    CheckResult r;
    Rng rng(424242);
    const int n = 64;
    ChirpProfile p = ChirpProfile::with_defaults(n);
    ChannelScenarioConfig cfg;
    cfg.n = n;
    cfg.num_paths = 3;
    cfg.max_delay = 3;
    cfg.max_doppler = 1.0;

    double worst_mag = 0.0;
    int mask_mismatches = 0;
    for (int round = 0; round < 50; ++round) {
        DelayDopplerChannel ch = sample_channel(cfg, rng, p.c1).first;
        PermutationKey key = PermutationKey::random(n, rng);
        EffectiveChannel eff = effective_channel(ch, p, key);
        EffectiveChannel classic = effective_channel(ch, p, PermutationKey::identity(n));
        worst_mag = std::max(
            worst_mag, (eff.matrix.cwiseAbs() - eff.intermediate.cwiseAbs()).cwiseAbs().maxCoeff());
        for (int row = 0; row < n; ++row) {
            for (int col = 0; col < n; ++col) {
                bool a = std::abs(eff.matrix(row, col)) > 1e-9;
                bool b = std::abs(classic.matrix(row, col)) > 1e-9;
                if (a != b) ++mask_mismatches;
            }
        }
    }
    std::ostringstream os1;
    os1 << "max | |G| - |Xi| | over 50 channels = " << worst_mag << " (tolerance 1e-10)";
    expect(r, worst_mag < 1e-10, os1.str());
    std::ostringstream os2;
    os2 << "support-mask mismatches vs classic transform at threshold 1e-9: " << mask_mismatches;
    expect(r, mask_mismatches == 0, os2.str());
    return r;
}

CheckResult criterion_derangement() {
    CheckResult r;

    // Both formula routes agree for all N <= 128 (alternating series oracle
    // evaluated independently here in long double).
    double worst = 0.0;
    for (int n = 1; n <= 128; ++n) {
        GuessDistribution gd = guess_distribution(n);
        for (int l = 0; l <= n; ++l) {
            long double s = 0.0L, term = 1.0L;
            for (int k = 0; k <= n - l; ++k) {
                if (k > 0) term = -term / k;
                s += term;
            }
            long double lf = 1.0L;
            for (int k = 2; k <= l; ++k) lf *= k;
            worst = std::max(worst, std::abs(gd.pmf[static_cast<std::size_t>(l)] -
                                             static_cast<double>(s / lf)));
        }
    }
    std::ostringstream os;
    os << "max |P_l(derangement route) - P_l(alternating series)| for N <= 128 = " << worst;
    expect(r, worst < 1e-12, os.str());

    // Exhaustive enumeration for N <= 7 matches the exact numerators.
    bool brute_ok = true;
    for (int n = 2; n <= 7 && brute_ok; ++n) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
        do {
            int fixed = 0;
            for (int i = 0; i < n; ++i)
                if (perm[static_cast<std::size_t>(i)] == i) ++fixed;
            ++counts[static_cast<std::size_t>(fixed)];
        } while (std::next_permutation(perm.begin(), perm.end()));
        GuessDistribution gd = guess_distribution(n);
        for (int l = 0; l <= n; ++l)
            if (!(gd.numerators[static_cast<std::size_t>(l)] ==
                  BigUint(counts[static_cast<std::size_t>(l)])))
                brute_ok = false;
    }
    expect(r, brute_ok, "brute-force enumeration matches exactly for N <= 7");

    bool zero_ok = true, sum_ok = true;
    for (int n : {4, 16, 64, 128, 512}) {
        GuessDistribution gd = guess_distribution(n);
        if (gd.pmf[static_cast<std::size_t>(n - 1)] != 0.0) zero_ok = false;
        if (!gd.numerators[static_cast<std::size_t>(n - 1)].is_zero()) zero_ok = false;
        // guess_distribution verifies sum(numerators) == N! internally and
        // throws otherwise; reaching here means the exact sum held.
        if (!gd.exact_mode) sum_ok = false;
    }
    expect(r, zero_ok, "P_{N-1} = 0 exactly");
    expect(r, sum_ok, "sum of P_l = 1 exactly in rational mode (N up to 512)");
    return r;
}

CheckResult criterion_analytic_constants() {
    CheckResult r;

    AttackCostReport c16 = classical_cost(16);
    expect(r, c16.classical_evals_sci == "2.1e13",
           "16! reported as ~2.1e13 (got ~" + c16.classical_evals_sci + ")");

    // Guess CDF at l <= 10.
    for (int n : {64, 3300}) {
        double cdf = guess_cdf_wrong(n, 10);
        std::ostringstream os;
        os << "CDF(l <= 10) at N = " << n << " equals 0.99999999992 +/- 1e-11 (computed "
           << std::setprecision(13) << std::fixed << cdf << ")";
        expect(r, std::abs(cdf - 0.99999999992) <= 1e-11, os.str());
    }

    AttackCostReport q = quantum_cost(3300);
    {
        std::ostringstream os;
        os << "GAS queries for N = 3300 within 0.5 of log10 = 1654.26 (computed log10 = "
           << std::setprecision(2) << std::fixed << q.gas_log10_queries << ", displayed ~"
           << q.gas_queries_sci << ")";
        expect(r, std::abs(q.gas_log10_queries - 1654.26) <= 0.5, os.str());
    }
    {
        std::ostringstream os;
        os << "physical qubits for N = 3300 span ~3.4e7 to ~3.4e8 (computed "
           << format_double(q.physical_qubits_low) << " to "
           << format_double(q.physical_qubits_high) << ")";
        bool low_ok = std::abs(std::log10(q.physical_qubits_low) - std::log10(3.4e7)) < 0.05;
        bool high_ok = std::abs(std::log10(q.physical_qubits_high) - std::log10(3.4e8)) < 0.05;
        expect(r, low_ok && high_ok, os.str());
    }
    return r;
}

BerConfig headline_ber_config() {
    BerConfig c;
    c.n = 64;
    c.channel.n = 64;
    c.channel.num_paths = 3;
    c.channel.max_delay = 3;
    c.channel.max_doppler = 1.0;
    c.modulation = Modulation::qpsk;
    c.snr_grid_db.clear();
    for (int s = 0; s <= 30; s += 2) c.snr_grid_db.push_back(s);
    c.trials_per_point = 10000;
    c.master_seed = 0xF163;
    return c;
}

CheckResult criterion_ber_properties() {
    CheckResult r;

    BerConfig base = headline_ber_config();
    std::cerr << "  [ber] remote / random-key run...\n";
    BerReport remote = run_ber(base);

    // (a) Bob's BER strictly decreases and drops below 1e-3 by 30 dB.
    bool strictly_decreasing = true;
    for (std::size_t i = 0; i + 1 < remote.points.size(); ++i)
        if (!(remote.points[i + 1].bob_ber < remote.points[i].bob_ber))
            strictly_decreasing = false;
    expect(r, strictly_decreasing, "(a) Bob BER strictly decreases across the 0..30 dB grid");
    std::ostringstream osa;
    osa << "(a) Bob BER at 30 dB = " << remote.points.back().bob_ber << " < 1e-3";
    expect(r, remote.points.back().bob_ber < 1e-3, osa.str());

    // (b) Random-key Eve sits in [0.45, 0.55] at every point.
    bool eve_band = true;
    for (const auto& p : remote.points)
        if (p.eve_ber < 0.45 || p.eve_ber > 0.55) eve_band = false;
    expect(r, eve_band, "(b) random-key Eve BER within [0.45, 0.55] at every SNR point");

    // (c) Eve constrained to at most 10 agreements.
    std::cerr << "  [ber] remote / l <= 10 constrained run...\n";
    BerConfig bounded = base;
    bounded.eve.kind = EveStrategy::Kind::fixed_point_bounded;
    bounded.eve.l_max = 10;
    BerReport bounded_run = run_ber(bounded);
    bool bounded_band = true;
    for (const auto& p : bounded_run.points)
        if (p.eve_ber < 0.45 || p.eve_ber > 0.55) bounded_band = false;
    expect(r, bounded_band, "(c) l <= 10 constrained Eve BER within [0.45, 0.55] at every point");

    // (d) Remote vs co-located Eve differ by less than 3 sigma everywhere.
    std::cerr << "  [ber] colocated / random-key run...\n";
    BerConfig colo = base;
    colo.scenario = Scenario::colocated;
    BerReport colocated = run_ber(colo);
    bool scenario_match = true;
    double worst_z = 0.0;
    for (std::size_t i = 0; i < remote.points.size(); ++i) {
        double p1 = remote.points[i].eve_ber;
        double p2 = colocated.points[i].eve_ber;
        double nn = static_cast<double>(remote.points[i].total_bits);
        double pooled = (p1 + p2) / 2.0;
        double sigma = std::sqrt(2.0 * pooled * (1.0 - pooled) / nn);
        double z = std::abs(p1 - p2) / sigma;
        worst_z = std::max(worst_z, z);
        if (z >= 3.0) scenario_match = false;
    }
    std::ostringstream osd;
    osd << "(d) remote vs co-located Eve BER within 3 sigma at every point (worst z = " << worst_z
        << ")";
    expect(r, scenario_match, osd.str());
    return r;
}

CheckResult criterion_determinism() {
    CheckResult r;
    BerConfig c = headline_ber_config();
    c.n = 32;
    c.channel.n = 32;
    c.snr_grid_db = {0, 10, 20, 30};
    c.trials_per_point = 400;

    std::string baseline;
    bool identical = true;
    for (int workers : {1, 4, 8}) {
        c.workers = workers;
        std::string csv = ber_csv(run_ber(c));
        if (baseline.empty())
            baseline = csv;
        else if (csv != baseline)
            identical = false;
    }
    expect(r, identical, "BER CSV bytes identical at 1, 4 and 8 workers");

    c.workers = 2;
    std::string once = ber_csv(run_ber(c));
    std::string twice = ber_csv(run_ber(c));
    expect(r, once == twice, "repeated run with the same config is byte-identical");
    return r;
}

CheckResult criterion_ml_oracle() {
    CheckResult r;
    Rng rng(0x31337);
    Constellation bpsk = Constellation::bpsk();
    int agree = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        Eigen::MatrixXcd g(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g(i, j) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        Eigen::VectorXcd x(2);
        x << bpsk.point(static_cast<int>(rng.uniform_int(2))),
            bpsk.point(static_cast<int>(rng.uniform_int(2)));
        Eigen::VectorXcd y = g * x;
        for (int i = 0; i < 2; ++i) y(i) += rng.complex_gaussian(0.1);

        // Explicit enumeration of the four candidates.
        double best = std::numeric_limits<double>::infinity();
        Eigen::VectorXcd best_x(2);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                Eigen::VectorXcd cand(2);
                cand << bpsk.point(a), bpsk.point(b);
                double cost = (y - g * cand).squaredNorm();
                if (cost < best) {
                    best = cost;
                    best_x = cand;
                }
            }
        }
        Eigen::VectorXcd det = ml_detect(y, g, bpsk);
        if ((det - best_x).cwiseAbs().maxCoeff() == 0.0) ++agree;
    }
    std::ostringstream os;
    os << "ml_detect matched the explicit 4-candidate argmin in " << agree << "/" << trials
       << " noisy trials";
    expect(r, agree == trials, os.str());
    return r;
}

struct Criterion {
    const char* name;
    const char* label;
    std::function<CheckResult()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {"unitarity", "unitarity suite", criterion_unitarity},
        {"codec", "permutation codec oracle", criterion_codec},
        {"structural_invariance", "effective-channel structural invariance",
         criterion_structural_invariance},
        {"derangement", "derangement exactness", criterion_derangement},
        {"analytic_constants", "headline analytical constants", criterion_analytic_constants},
        {"ber", "BER properties", criterion_ber_properties},
        {"determinism", "worker-count determinism", criterion_determinism},
        {"ml_oracle", "ML detection oracle", criterion_ml_oracle},
    };
    return list;
}

}  // namespace

int main(int argc, char** argv) {
    std::string only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = argv[++i];
        } else if (std::strcmp(argv[i], "--list") == 0) {
            for (const auto& c : criteria()) std::cout << c.name << '\n';
            return 0;
        } else {
            std::cerr << "usage: acceptance [--criterion NAME] [--list]\n";
            return 2;
        }
    }

    int failures = 0;
    bool matched = false;
    for (const auto& c : criteria()) {
        if (!only.empty() && only != c.name) continue;
        matched = true;
        auto t0 = std::chrono::steady_clock::now();
        CheckResult res;
        try {
            res = c.run();
        } catch (const std::exception& e) {
            res.pass = false;
            res.detail << "    FAIL: exception: " << e.what() << '\n';
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (res.pass ? "[PASS] " : "[FAIL] ") << c.label << "  (" << std::fixed
                  << std::setprecision(1) << secs << " s)\n"
                  << res.detail.str();
        if (!res.pass) ++failures;
    }
    if (!matched) {
        std::cerr << "unknown criterion \"" << only << "\" (see --list)\n";
        return 2;
    }
    if (failures) std::cout << failures << " criterion(s) failed\n";
    return failures == 0 ? 0 : 1;
}
