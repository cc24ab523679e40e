#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cpafdm/channel.hpp"
#include "cpafdm/link.hpp"
#include "cpafdm/transforms.hpp"

namespace cpafdm {

enum class Modulation { qpsk, qam16, qam64 };
enum class Scenario { remote, colocated };

Constellation constellation_for(Modulation m);
std::string to_string(Modulation m);
std::string to_string(Scenario s);
Modulation modulation_from_string(const std::string& s);
Scenario scenario_from_string(const std::string& s);

// How Eve picks her demodulation key each trial.
//   random_key         : uniform over all N! keys.
//   fixed_point_bounded: random key conditioned on at most l_max agreements
//                        with Alice's key (l drawn from the conditional
//                        guess distribution, then constrained sampling).
//   fixed_point_exact  : exactly l_exact agreements (used by the l-sweep).
//   fixed_key          : a caller-supplied key.
struct EveStrategy {
    enum class Kind { random_key, fixed_point_bounded, fixed_point_exact, fixed_key };
    Kind kind = Kind::random_key;
    int l_max = 10;
    int l_exact = 0;
    std::optional<PermutationKey> key;
};

struct BerConfig {
    int n = 64;
    Modulation modulation = Modulation::qpsk;
    std::vector<double> snr_grid_db = {0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30};
    int trials_per_point = 10000;
    Scenario scenario = Scenario::remote;
    EveStrategy eve;
    ChannelScenarioConfig channel;
    std::uint64_t master_seed = 1;
    int workers = 0;  // 0: CPAFDM_WORKERS env var, else hardware concurrency

    bool fresh_channel_per_trial = true;  // block fading
    bool fresh_key_per_trial = true;      // new Alice key each trial
    std::optional<PermutationKey> alice_key;

    std::optional<double> c1_override;
    std::optional<double> c2_override;
    PrefixPhase prefix = PrefixPhase::chirp_periodic;

    void validate() const;
    ChirpProfile make_profile() const;
};

struct BerPoint {
    double snr_db = 0;
    long long bob_bit_errors = 0;
    long long eve_bit_errors = 0;
    long long total_bits = 0;
    double bob_ber = 0, eve_ber = 0;
    double bob_ci_low = 0, bob_ci_high = 0;
    double eve_ci_low = 0, eve_ci_high = 0;
};

struct BerReport {
    BerConfig config;
    std::vector<BerPoint> points;
    double wall_seconds = 0;
};

// Runs the Monte Carlo BER experiment. Deterministic for a given config:
// trial t of SNR index s consumes the substream derived from
// (master_seed, s, t), and reduction is integer summation, so results are
// bit-identical at any worker count.
BerReport run_ber(const BerConfig& config);

struct FixedPointSweepEntry {
    int l = 0;
    BerReport report;
};

// Eve constrained to exactly l agreements with Alice's key, for each l.
std::vector<FixedPointSweepEntry> run_fixed_point_sweep(const BerConfig& config,
                                                        const std::vector<int>& l_values);

int resolve_worker_count(int configured);

}  // namespace cpafdm
