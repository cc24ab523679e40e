#include "cpafdm/report_io.hpp"

#include <charconv>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cpafdm {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, end);
}

std::string ber_csv(const BerReport& report) {
    std::ostringstream os;
    os << "snr_db,receiver,ber,errors,bits,ci_low,ci_high\n";
    for (const auto& p : report.points) {
        os << format_double(p.snr_db) << ",bob," << format_double(p.bob_ber) << ','
           << p.bob_bit_errors << ',' << p.total_bits << ',' << format_double(p.bob_ci_low)
           << ',' << format_double(p.bob_ci_high) << '\n';
        os << format_double(p.snr_db) << ",eve," << format_double(p.eve_ber) << ','
           << p.eve_bit_errors << ',' << p.total_bits << ',' << format_double(p.eve_ci_low)
           << ',' << format_double(p.eve_ci_high) << '\n';
    }
    return os.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

std::vector<BerCsvRow> parse_ber_csv(const std::string& text) {
    std::vector<BerCsvRow> rows;
    std::istringstream is(text);
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (header) {
            if (line != "snr_db,receiver,ber,errors,bits,ci_low,ci_high")
                throw std::invalid_argument("unexpected BER CSV header: " + line);
            header = false;
            continue;
        }
        auto f = split_csv_line(line);
        if (f.size() != 7) throw std::invalid_argument("malformed BER CSV row: " + line);
        BerCsvRow r;
        r.snr_db = std::strtod(f[0].c_str(), nullptr);
        r.receiver = f[1];
        r.ber = std::strtod(f[2].c_str(), nullptr);
        r.errors = std::strtoll(f[3].c_str(), nullptr, 10);
        r.bits = std::strtoll(f[4].c_str(), nullptr, 10);
        r.ci_low = std::strtod(f[5].c_str(), nullptr);
        r.ci_high = std::strtod(f[6].c_str(), nullptr);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string sweep_csv(const std::vector<FixedPointSweepEntry>& entries) {
    std::ostringstream os;
    os << "l,snr_db,receiver,ber,errors,bits,ci_low,ci_high\n";
    for (const auto& e : entries) {
        for (const auto& p : e.report.points) {
            os << e.l << ',' << format_double(p.snr_db) << ",bob," << format_double(p.bob_ber)
               << ',' << p.bob_bit_errors << ',' << p.total_bits << ','
               << format_double(p.bob_ci_low) << ',' << format_double(p.bob_ci_high) << '\n';
            os << e.l << ',' << format_double(p.snr_db) << ",eve," << format_double(p.eve_ber)
               << ',' << p.eve_bit_errors << ',' << p.total_bits << ','
               << format_double(p.eve_ci_low) << ',' << format_double(p.eve_ci_high) << '\n';
        }
    }
    return os.str();
}

std::string guess_csv(const GuessDistribution& dist) {
    std::ostringstream os;
    os << "l,pmf,cdf_at_least_n_minus_l_wrong\n";
    for (int l = 0; l <= dist.n; ++l) {
        os << l << ',' << format_double(dist.pmf[static_cast<std::size_t>(l)]) << ','
           << format_double(dist.cdf_wrong[static_cast<std::size_t>(l)]) << '\n';
    }
    return os.str();
}

std::string attack_cost_text(const AttackCostReport& r) {
    std::ostringstream os;
    os << "n: " << r.n << '\n';
    os << "keyspace: N! permutation keys\n";
    os << "per_eval_cost_order: " << r.per_eval_cost_order << '\n';
    os << "classical_evals_log10: " << format_double(r.classical_log10_evals) << '\n';
    os << "classical_evals: ~" << r.classical_evals_sci << '\n';
    if (!r.classical_evals_exact.empty())
        os << "classical_evals_exact: " << r.classical_evals_exact << '\n';
    os << "classical_total_complexity: O(" << r.per_eval_cost_order << " * N!)\n";
    os << "classical_total_log10: " << format_double(r.classical_total_log10) << '\n';
    os << "gas_queries_log10: " << format_double(r.gas_log10_queries) << '\n';
    os << "gas_queries: ~" << r.gas_queries_sci << '\n';
    os << "gas_queries_log10_stirling: " << format_double(r.gas_log10_queries_stirling) << '\n';
    os << "logical_qubits: " << format_double(r.logical_qubits) << '\n';
    os << "logical_qubits_stirling_approx: " << format_double(r.logical_qubits_stirling) << '\n';
    os << "error_correction_overhead: " << format_double(r.overhead_low) << " to "
       << format_double(r.overhead_high) << " per logical qubit\n";
    os << "physical_qubits_low: " << format_double(r.physical_qubits_low) << '\n';
    os << "physical_qubits_high: " << format_double(r.physical_qubits_high) << '\n';
    return os.str();
}

std::string attack_cost_json(const AttackCostReport& r) {
    json j;
    j["n"] = r.n;
    j["per_eval_cost_order"] = r.per_eval_cost_order;
    j["classical_evals_log10"] = r.classical_log10_evals;
    j["classical_total_log10"] = r.classical_total_log10;
    j["classical_evals_sci"] = r.classical_evals_sci;
    if (!r.classical_evals_exact.empty()) j["classical_evals_exact"] = r.classical_evals_exact;
    j["gas_queries_log10"] = r.gas_log10_queries;
    j["gas_queries_sci"] = r.gas_queries_sci;
    j["gas_queries_log10_stirling"] = r.gas_log10_queries_stirling;
    j["logical_qubits"] = r.logical_qubits;
    j["logical_qubits_stirling_approx"] = r.logical_qubits_stirling;
    j["overhead_low"] = r.overhead_low;
    j["overhead_high"] = r.overhead_high;
    j["physical_qubits_low"] = r.physical_qubits_low;
    j["physical_qubits_high"] = r.physical_qubits_high;
    return j.dump(2);
}

namespace {

json eve_strategy_json(const EveStrategy& e) {
    json j;
    switch (e.kind) {
        case EveStrategy::Kind::random_key: j["kind"] = "random_key"; break;
        case EveStrategy::Kind::fixed_point_bounded:
            j["kind"] = "fixed_point_bounded";
            j["l_max"] = e.l_max;
            break;
        case EveStrategy::Kind::fixed_point_exact:
            j["kind"] = "fixed_point_exact";
            j["l_exact"] = e.l_exact;
            break;
        case EveStrategy::Kind::fixed_key:
            j["kind"] = "fixed_key";
            j["key_rank"] = e.key ? e.key->rank().to_decimal() : "0";
            break;
    }
    return j;
}

EveStrategy eve_strategy_from_json(const json& j, int n) {
    EveStrategy e;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "random_key") {
        e.kind = EveStrategy::Kind::random_key;
    } else if (kind == "fixed_point_bounded") {
        e.kind = EveStrategy::Kind::fixed_point_bounded;
        e.l_max = j.at("l_max").get<int>();
    } else if (kind == "fixed_point_exact") {
        e.kind = EveStrategy::Kind::fixed_point_exact;
        e.l_exact = j.at("l_exact").get<int>();
    } else if (kind == "fixed_key") {
        e.kind = EveStrategy::Kind::fixed_key;
        e.key = PermutationKey::from_rank(
            BigUint::from_decimal(j.at("key_rank").get<std::string>()), n);
    } else {
        throw std::invalid_argument("unknown eve strategy kind \"" + kind + "\"");
    }
    return e;
}

}  // namespace

std::string ber_config_json(const BerConfig& c) {
    json j;
    j["n"] = c.n;
    j["modulation"] = to_string(c.modulation);
    j["snr_grid_db"] = c.snr_grid_db;
    j["trials_per_point"] = c.trials_per_point;
    j["scenario"] = to_string(c.scenario);
    j["eve"] = eve_strategy_json(c.eve);
    j["channel"] = {{"num_paths", c.channel.num_paths},
                    {"max_delay", c.channel.max_delay},
                    {"max_doppler", c.channel.max_doppler},
                    {"fractional_doppler", c.channel.fractional_doppler}};
    j["master_seed"] = c.master_seed;
    j["workers"] = c.workers;
    j["fresh_channel_per_trial"] = c.fresh_channel_per_trial;
    j["fresh_key_per_trial"] = c.fresh_key_per_trial;
    if (c.alice_key) j["alice_key_rank"] = c.alice_key->rank().to_decimal();
    if (c.c1_override) j["c1"] = *c.c1_override;
    if (c.c2_override) j["c2"] = *c.c2_override;
    j["prefix"] = (c.prefix == PrefixPhase::chirp_periodic) ? "chirp_periodic" : "plain";
    return j.dump(2);
}

BerConfig ber_config_from_json(const std::string& text) {
    json j = json::parse(text);
    BerConfig c;
    c.n = j.at("n").get<int>();
    c.modulation = modulation_from_string(j.at("modulation").get<std::string>());
    c.snr_grid_db = j.at("snr_grid_db").get<std::vector<double>>();
    c.trials_per_point = j.at("trials_per_point").get<int>();
    c.scenario = scenario_from_string(j.at("scenario").get<std::string>());
    c.eve = eve_strategy_from_json(j.at("eve"), c.n);
    c.channel.n = c.n;
    const auto& ch = j.at("channel");
    c.channel.num_paths = ch.at("num_paths").get<int>();
    c.channel.max_delay = ch.at("max_delay").get<int>();
    c.channel.max_doppler = ch.at("max_doppler").get<double>();
    c.channel.fractional_doppler = ch.at("fractional_doppler").get<bool>();
    c.master_seed = j.at("master_seed").get<std::uint64_t>();
    c.workers = j.value("workers", 0);
    c.fresh_channel_per_trial = j.value("fresh_channel_per_trial", true);
    c.fresh_key_per_trial = j.value("fresh_key_per_trial", true);
    if (j.contains("alice_key_rank"))
        c.alice_key = PermutationKey::from_rank(
            BigUint::from_decimal(j.at("alice_key_rank").get<std::string>()), c.n);
    if (j.contains("c1")) c.c1_override = j.at("c1").get<double>();
    if (j.contains("c2")) c.c2_override = j.at("c2").get<double>();
    if (j.value("prefix", "chirp_periodic") == std::string("plain"))
        c.prefix = PrefixPhase::plain;
    return c;
}

std::string ber_report_json(const BerReport& report) {
    // Deliberately excludes wall time so replayed runs are byte-identical;
    // timing lives in the manifest timestamps.
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["config"] = json::parse(ber_config_json(report.config));
    auto& pts = j["points"] = json::array();
    for (const auto& p : report.points) {
        pts.push_back({{"snr_db", p.snr_db},
                       {"bob_ber", p.bob_ber},
                       {"eve_ber", p.eve_ber},
                       {"bob_bit_errors", p.bob_bit_errors},
                       {"eve_bit_errors", p.eve_bit_errors},
                       {"total_bits", p.total_bits},
                       {"bob_ci", {p.bob_ci_low, p.bob_ci_high}},
                       {"eve_ci", {p.eve_ci_low, p.eve_ci_high}}});
    }
    return j.dump(2);
}

std::string make_manifest(const std::string& subcommand, const std::string& config_json,
                          std::uint64_t master_seed, const std::vector<std::string>& outputs,
                          const std::string& started_iso8601,
                          const std::string& finished_iso8601) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["subcommand"] = subcommand;
    j["master_seed"] = master_seed;
    j["config"] = json::parse(config_json);
    j["outputs"] = outputs;
    j["started"] = started_iso8601;
    j["finished"] = finished_iso8601;
    return j.dump(2);
}

std::string iso8601_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << content;
    if (!os) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace cpafdm
