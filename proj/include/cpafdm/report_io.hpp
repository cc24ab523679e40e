#pragma once

#include <string>
#include <vector>

#include "cpafdm/security.hpp"
#include "cpafdm/sim.hpp"

namespace cpafdm {

inline constexpr const char* kToolName = "cpafdm";
inline constexpr const char* kToolVersion = "0.1.0";

// Shortest round-tripping decimal for a double ("%.17g" trimmed).
std::string format_double(double v);

// BER report CSV, schema v1:
//   snr_db,receiver,ber,errors,bits,ci_low,ci_high
std::string ber_csv(const BerReport& report);

struct BerCsvRow {
    double snr_db;
    std::string receiver;
    double ber;
    long long errors;
    long long bits;
    double ci_low;
    double ci_high;
};
std::vector<BerCsvRow> parse_ber_csv(const std::string& text);

// Fixed-point sweep CSV, schema v1:
//   l,snr_db,receiver,ber,errors,bits,ci_low,ci_high
std::string sweep_csv(const std::vector<FixedPointSweepEntry>& entries);

// Guess-probability table CSV, schema v1:
//   l,pmf,cdf_at_least_n_minus_l_wrong
std::string guess_csv(const GuessDistribution& dist);

// Attack-cost report as "key: value" lines and as JSON.
std::string attack_cost_text(const AttackCostReport& r);
std::string attack_cost_json(const AttackCostReport& r);

std::string ber_report_json(const BerReport& report);
std::string ber_config_json(const BerConfig& config);
BerConfig ber_config_from_json(const std::string& text);

// Run manifest: subcommand, resolved config, seed, outputs, timestamps.
std::string make_manifest(const std::string& subcommand, const std::string& config_json,
                          std::uint64_t master_seed, const std::vector<std::string>& outputs,
                          const std::string& started_iso8601, const std::string& finished_iso8601);

std::string iso8601_now();

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace cpafdm
