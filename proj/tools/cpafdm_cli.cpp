// Command-line front end: effective-channel dumps, guess-probability
// tables, attack-cost reports, BER experiments, and key-codec utilities.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cpafdm/channel.hpp"
#include "cpafdm/link.hpp"
#include "cpafdm/report_io.hpp"
#include "cpafdm/security.hpp"
#include "cpafdm/sim.hpp"
#include "cpafdm/transforms.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cpafdm;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string format = "csv";
    std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file (flags override file values)");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--format", o.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", o.seed, "master seed (64-bit)");
}

fs::path ensure_out_dir(const std::string& dir) {
    fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
    fs::create_directories(p);
    return p;
}

void write_with_manifest(const std::string& subcommand, const std::string& config_json,
                         std::uint64_t seed, const fs::path& out_dir,
                         const std::vector<std::pair<std::string, std::string>>& files,
                         const std::string& started) {
    std::vector<std::string> names;
    for (const auto& [name, content] : files) {
        write_text_file((out_dir / name).string(), content);
        names.push_back(name);
    }
    std::string manifest =
        make_manifest(subcommand, config_json, seed, names, started, iso8601_now());
    write_text_file((out_dir / "manifest.json").string(), manifest);
    for (const auto& name : names) std::cout << "wrote " << (out_dir / name).string() << '\n';
    std::cout << "wrote " << (out_dir / "manifest.json").string() << '\n';
}

// ---------------------------------------------------------------------------
// key: rank <-> permutation conversion and random key generation
// ---------------------------------------------------------------------------

int cmd_key(int n, const std::string& rank_str, const std::string& perm_str, bool random,
            std::uint64_t seed) {
    PermutationKey key = [&]() {
        if (random) {
            Rng rng(seed);
            return PermutationKey::random(n, rng);
        }
        if (!perm_str.empty()) {
            std::vector<int> perm;
            std::stringstream ss(perm_str);
            std::string tok;
            while (std::getline(ss, tok, ',')) perm.push_back(std::stoi(tok));
            return PermutationKey::from_perm(std::move(perm));
        }
        return PermutationKey::from_rank(BigUint::from_decimal(rank_str), n);
    }();

    // FNV-1a over the permutation entries, printed as a short fingerprint.
    std::uint64_t h = 1469598103934665603ull;
    for (int v : key.perm()) {
        h ^= static_cast<std::uint64_t>(v);
        h *= 1099511628211ull;
    }
    std::cout << "n: " << key.n() << '\n';
    std::cout << "rank: " << key.rank().to_decimal() << '\n';
    std::cout << "perm: " << key.perm_string() << " (order "
              << key.order().to_decimal() << ")\n";
    char fp[20];
    std::snprintf(fp, sizeof(fp), "%016llx", static_cast<unsigned long long>(h));
    std::cout << "fingerprint: " << fp << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// attack-cost
// ---------------------------------------------------------------------------

int cmd_attack_cost(int n, const std::string& lambda, double overhead_low, double overhead_high,
                    const CommonOpts& common) {
    std::string started = iso8601_now();
    AttackCostReport r = attack_cost(n, lambda, overhead_low, overhead_high);
    std::string text = attack_cost_text(r);
    std::cout << text;
    if (!common.out_dir.empty()) {
        json cfg{{"n", n},
                 {"lambda", lambda},
                 {"overhead_low", overhead_low},
                 {"overhead_high", overhead_high}};
        fs::path out = ensure_out_dir(common.out_dir);
        std::vector<std::pair<std::string, std::string>> files;
        if (common.format == "json")
            files.emplace_back("attack_cost.json", attack_cost_json(r));
        else
            files.emplace_back("attack_cost.txt", text);
        write_with_manifest("attack-cost", cfg.dump(2), common.seed, out, files, started);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// guess-prob
// ---------------------------------------------------------------------------

int cmd_guess_prob(const std::vector<int>& n_values, int l_max, const CommonOpts& common) {
    std::string started = iso8601_now();
    std::vector<std::pair<std::string, std::string>> files;
    json cfg{{"n_values", n_values}, {"l_max", l_max}};
    for (int n : n_values) {
        GuessDistribution gd = guess_distribution(n);
        int l_show = std::min(l_max, n);
        char line[128];
        std::snprintf(line, sizeof(line), "%.11f", gd.cdf_wrong[static_cast<std::size_t>(l_show)]);
        std::cout << "n: " << n << '\n';
        std::cout << "P(at most " << l_show << " correct) = P(at least " << (n - l_show)
                  << " wrong) = " << line << '\n';
        if (common.format == "json") {
            json j{{"n", n}, {"pmf", gd.pmf}, {"cdf_wrong", gd.cdf_wrong}};
            files.emplace_back("guess_prob_n" + std::to_string(n) + ".json", j.dump(2));
        } else {
            files.emplace_back("guess_prob_n" + std::to_string(n) + ".csv", guess_csv(gd));
        }
    }
    if (!common.out_dir.empty()) {
        fs::path out = ensure_out_dir(common.out_dir);
        write_with_manifest("guess-prob", cfg.dump(2), common.seed, out, files, started);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// effective-channel
// ---------------------------------------------------------------------------

std::string grid_csv(const Eigen::MatrixXcd& g) {
    std::ostringstream os;
    os << "row,col,magnitude,phase\n";
    for (int r = 0; r < g.rows(); ++r)
        for (int c = 0; c < g.cols(); ++c)
            os << r << ',' << c << ',' << format_double(std::abs(g(r, c))) << ','
               << format_double(std::arg(g(r, c))) << '\n';
    return os.str();
}

std::string dense_magnitude_csv(const Eigen::MatrixXcd& g) {
    std::ostringstream os;
    for (int r = 0; r < g.rows(); ++r) {
        for (int c = 0; c < g.cols(); ++c) {
            if (c) os << ',';
            os << format_double(std::abs(g(r, c)));
        }
        os << '\n';
    }
    return os.str();
}

std::string sparsity_csv(const std::vector<std::pair<std::string, const Eigen::MatrixXcd*>>& grids,
                         double threshold) {
    std::ostringstream os;
    os << "variant,row,entries_above_threshold\n";
    for (const auto& [name, g] : grids) {
        for (int r = 0; r < g->rows(); ++r) {
            int count = 0;
            for (int c = 0; c < g->cols(); ++c)
                if (std::abs((*g)(r, c)) > threshold) ++count;
            os << name << ',' << r << ',' << count << '\n';
        }
    }
    return os.str();
}

int cmd_effective_channel(int n, double max_doppler, std::optional<double> c1_opt,
                          std::optional<double> c2_opt, const std::string& key_rank,
                          const std::string& mismatched_rank, const std::string& channel_file,
                          int paths, int max_delay, bool fractional, double threshold,
                          const CommonOpts& common) {
    std::string started = iso8601_now();
    double c1 = c1_opt ? *c1_opt : ChirpProfile::default_c1(n, max_doppler);
    double c2 = c2_opt ? *c2_opt : ChirpProfile::default_c2();
    ChirpProfile profile(n, c1, c2);
    profile.require_distinct_second_chirp();

    DelayDopplerChannel ch = [&]() {
        if (!channel_file.empty())
            return DelayDopplerChannel::from_json(read_text_file(channel_file));
        ChannelScenarioConfig cfg;
        cfg.n = n;
        cfg.num_paths = paths;
        cfg.max_delay = max_delay;
        cfg.max_doppler = max_doppler;
        cfg.fractional_doppler = fractional;
        Rng rng(common.seed);
        return sample_channel(cfg, rng, c1).first;
    }();
    if (ch.n != n) throw std::invalid_argument("channel N does not match --n");

    PermutationKey key = PermutationKey::from_rank(BigUint::from_decimal(key_rank), n);
    PermutationKey classic = PermutationKey::identity(n);

    // Matched effective channels for the classic and permuted transforms,
    // and the mismatched operator A_{k'} H A_k^{-1} seen by an eavesdropper
    // demodulating with the wrong key.
    EffectiveChannel matched = effective_channel(ch, profile, key);
    EffectiveChannel classic_eff = effective_channel(ch, profile, classic);
    PermutationKey kp = PermutationKey::from_rank(BigUint::from_decimal(mismatched_rank), n);
    Eigen::MatrixXcd a_kp = daft(profile, kp, Direction::forward).matrix;
    Eigen::MatrixXcd a_k_inv = daft(profile, key, Direction::inverse).matrix;
    Eigen::MatrixXcd mismatched = a_kp * ch.matrix * a_k_inv;

    json cfg{{"n", n},
             {"c1", c1},
             {"c2", c2},
             {"key_rank", key_rank},
             {"mismatched_rank", mismatched_rank},
             {"paths", paths},
             {"max_delay", max_delay},
             {"max_doppler", max_doppler},
             {"fractional_doppler", fractional},
             {"threshold", threshold},
             {"channel_file", channel_file}};

    fs::path out = ensure_out_dir(common.out_dir.empty() ? "." : common.out_dir);
    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("afdm_classic_grid.csv", grid_csv(classic_eff.matrix));
    files.emplace_back("afdm_classic_magnitude.csv", dense_magnitude_csv(classic_eff.matrix));
    files.emplace_back("cpafdm_matched_grid.csv", grid_csv(matched.matrix));
    files.emplace_back("cpafdm_matched_magnitude.csv", dense_magnitude_csv(matched.matrix));
    files.emplace_back("cpafdm_mismatched_grid.csv", grid_csv(mismatched));
    files.emplace_back("cpafdm_mismatched_magnitude.csv", dense_magnitude_csv(mismatched));
    files.emplace_back("channel.json", ch.to_json());
    files.emplace_back("sparsity_summary.csv",
                       sparsity_csv({{"afdm_classic", &classic_eff.matrix},
                                     {"cpafdm_matched", &matched.matrix},
                                     {"cpafdm_mismatched", &mismatched}},
                                    threshold));
    write_with_manifest("effective-channel", cfg.dump(2), common.seed, out, files, started);

    // Quick structural summary on stdout.
    int same = 0, total = 0;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            bool a = std::abs(matched.matrix(r, c)) > threshold;
            bool b = std::abs(classic_eff.matrix(r, c)) > threshold;
            if (a == b) ++same;
            ++total;
        }
    }
    std::cout << "support match (matched vs classic): " << same << "/" << total << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// ber / ber-sweep-l
// ---------------------------------------------------------------------------

std::vector<double> parse_snr_grid(const std::string& text) {
    // "start:step:stop" or a comma-separated list.
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        double a, step, b;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &a, &step, &b) != 3 || step <= 0)
            throw std::invalid_argument("bad SNR grid \"" + text + "\" (want start:step:stop)");
        for (double v = a; v <= b + 1e-9; v += step) grid.push_back(v);
        return grid;
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
    return grid;
}

EveStrategy parse_eve_strategy(const std::string& text, int n) {
    EveStrategy e;
    if (text == "random") {
        e.kind = EveStrategy::Kind::random_key;
    } else if (text.rfind("bounded:", 0) == 0) {
        e.kind = EveStrategy::Kind::fixed_point_bounded;
        e.l_max = std::stoi(text.substr(8));
    } else if (text.rfind("fixed:", 0) == 0) {
        e.kind = EveStrategy::Kind::fixed_key;
        e.key = PermutationKey::from_rank(BigUint::from_decimal(text.substr(6)), n);
    } else {
        throw std::invalid_argument("bad eve strategy \"" + text +
                                    "\" (random, bounded:L, fixed:RANK)");
    }
    return e;
}

struct BerCliOpts {
    int n = 64;
    std::string modulation = "qpsk";
    std::string snr = "0:2:30";
    int trials = 10000;
    std::string scenario = "remote";
    std::string eve = "random";
    int paths = 3;
    int max_delay = 3;
    double max_doppler = 1.0;
    bool fractional = false;
    int workers = 0;
    bool fixed_channel = false;
    std::string alice_rank;
    std::optional<double> c1, c2;
    bool plain_prefix = false;
};

BerConfig resolve_ber_config(const BerCliOpts& o, const CommonOpts& common, const CLI::App* cmd) {
    BerConfig c;
    if (!common.config_path.empty()) c = ber_config_from_json(read_text_file(common.config_path));

    auto given = [&](const std::string& flag) {
        const CLI::Option* opt = cmd->get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
    };
    bool no_file = common.config_path.empty();

    if (no_file || given("--n")) {
        c.n = o.n;
        c.channel.n = o.n;
    }
    if (no_file || given("--mod")) c.modulation = modulation_from_string(o.modulation);
    if (no_file || given("--snr")) c.snr_grid_db = parse_snr_grid(o.snr);
    if (no_file || given("--trials")) c.trials_per_point = o.trials;
    if (no_file || given("--scenario")) c.scenario = scenario_from_string(o.scenario);
    if (no_file || given("--eve")) c.eve = parse_eve_strategy(o.eve, c.n);
    if (no_file || given("--paths")) c.channel.num_paths = o.paths;
    if (no_file || given("--max-delay")) c.channel.max_delay = o.max_delay;
    if (no_file || given("--max-doppler")) c.channel.max_doppler = o.max_doppler;
    if (no_file || given("--fractional-doppler")) c.channel.fractional_doppler = o.fractional;
    if (no_file || given("--workers")) c.workers = o.workers;
    if (no_file || given("--fixed-channel")) c.fresh_channel_per_trial = !o.fixed_channel;
    if (given("--alice-rank")) {
        c.fresh_key_per_trial = false;
        c.alice_key = PermutationKey::from_rank(BigUint::from_decimal(o.alice_rank), c.n);
    }
    if (given("--c1")) c.c1_override = o.c1;
    if (given("--c2")) c.c2_override = o.c2;
    if (no_file || given("--plain-prefix"))
        c.prefix = o.plain_prefix ? PrefixPhase::plain : PrefixPhase::chirp_periodic;
    if (no_file || given("--seed")) c.master_seed = common.seed;
    return c;
}

void add_ber_options(CLI::App* cmd, BerCliOpts& o) {
    cmd->add_option("--n", o.n, "subcarrier count");
    cmd->add_option("--mod", o.modulation, "qpsk, 16qam or 64qam");
    cmd->add_option("--snr", o.snr, "SNR grid, start:step:stop or list");
    cmd->add_option("--trials", o.trials, "trials per SNR point");
    cmd->add_option("--scenario", o.scenario, "remote or colocated");
    cmd->add_option("--paths", o.paths, "number of channel paths");
    cmd->add_option("--max-delay", o.max_delay, "maximum path delay");
    cmd->add_option("--max-doppler", o.max_doppler, "maximum digital Doppler");
    cmd->add_flag("--fractional-doppler", o.fractional, "allow fractional Doppler");
    cmd->add_option("--workers", o.workers, "worker threads (0: CPAFDM_WORKERS or hardware)");
    cmd->add_flag("--fixed-channel", o.fixed_channel, "one channel for the whole run");
    cmd->add_option("--alice-rank", o.alice_rank, "fix Alice's key to this rank");
    cmd->add_option("--c1", o.c1, "first chirp frequency override");
    cmd->add_option("--c2", o.c2, "second chirp frequency override");
    cmd->add_flag("--plain-prefix", o.plain_prefix, "plain cyclic prefix (no chirp phase)");
}

int cmd_ber(const BerCliOpts& o, const CommonOpts& common, const CLI::App* cmd) {
    std::string started = iso8601_now();
    BerConfig c = resolve_ber_config(o, common, cmd);
    c.validate();
    std::cerr << "running ber: n=" << c.n << " points=" << c.snr_grid_db.size()
              << " trials=" << c.trials_per_point
              << " workers=" << resolve_worker_count(c.workers) << '\n';
    BerReport r = run_ber(c);
    for (const auto& p : r.points)
        std::cout << "snr " << p.snr_db << " dB: bob " << p.bob_ber << ", eve " << p.eve_ber
                  << '\n';
    fs::path out = ensure_out_dir(common.out_dir.empty() ? "." : common.out_dir);
    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("ber.csv", ber_csv(r));
    files.emplace_back("summary.json", ber_report_json(r));
    write_with_manifest("ber", ber_config_json(c), c.master_seed, out, files, started);
    return 0;
}

int cmd_ber_sweep(const BerCliOpts& o, const std::string& l_values_spec, const CommonOpts& common,
                  const CLI::App* cmd) {
    std::string started = iso8601_now();
    BerConfig c = resolve_ber_config(o, common, cmd);
    std::vector<int> l_values;
    std::stringstream ss(l_values_spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) l_values.push_back(std::stoi(tok));
    if (l_values.empty()) throw std::invalid_argument("no l values given");

    auto entries = run_fixed_point_sweep(c, l_values);
    for (const auto& e : entries)
        std::cout << "l=" << e.l << ": eve ber at first point " << e.report.points[0].eve_ber
                  << '\n';
    fs::path out = ensure_out_dir(common.out_dir.empty() ? "." : common.out_dir);
    json cfg = json::parse(ber_config_json(c));
    cfg["l_values"] = l_values;
    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("ber_sweep_l.csv", sweep_csv(entries));
    write_with_manifest("ber-sweep-l", cfg.dump(2), c.master_seed, out, files, started);
    return 0;
}

// ---------------------------------------------------------------------------
// replay
// ---------------------------------------------------------------------------

int replay_manifest(const std::string& path) {
    json m = json::parse(read_text_file(path));
    std::string sub = m.at("subcommand").get<std::string>();
    fs::path out_dir = fs::path(path).parent_path();
    CommonOpts common;
    common.out_dir = out_dir.empty() ? "." : out_dir.string();
    common.seed = m.at("master_seed").get<std::uint64_t>();
    if (sub == "ber") {
        BerConfig c = ber_config_from_json(m.at("config").dump());
        std::string started = iso8601_now();
        BerReport r = run_ber(c);
        std::vector<std::pair<std::string, std::string>> files;
        files.emplace_back("ber.csv", ber_csv(r));
        files.emplace_back("summary.json", ber_report_json(r));
        write_with_manifest("ber", ber_config_json(c), c.master_seed,
                            ensure_out_dir(common.out_dir), files, started);
        return 0;
    }
    if (sub == "guess-prob") {
        const auto& cfg = m.at("config");
        return cmd_guess_prob(cfg.at("n_values").get<std::vector<int>>(),
                              cfg.at("l_max").get<int>(), common);
    }
    if (sub == "attack-cost") {
        const auto& cfg = m.at("config");
        return cmd_attack_cost(cfg.at("n").get<int>(), cfg.at("lambda").get<std::string>(),
                               cfg.at("overhead_low").get<double>(),
                               cfg.at("overhead_high").get<double>(), common);
    }
    throw std::invalid_argument("replay: unsupported subcommand \"" + sub + "\"");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chirp-permuted AFDM physical-layer security toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    auto* key = app.add_subcommand("key", "rank <-> permutation conversion and key generation");
    int key_n = 3;
    std::string key_rank = "0", key_perm;
    bool key_random = false;
    std::uint64_t key_seed = 1;
    key->add_option("--n", key_n, "permutation length")->required();
    key->add_option("--rank", key_rank, "zero-based rank as a decimal string");
    key->add_option("--perm", key_perm, "comma-separated permutation, e.g. 0,2,1");
    key->add_flag("--random", key_random, "draw a uniform random key");
    key->add_option("--seed", key_seed, "seed for --random");

    auto* ac = app.add_subcommand("attack-cost", "classical and quantum key-search costs");
    int ac_n = 64;
    std::string ac_lambda = "N^2";
    double ac_low = 1e3, ac_high = 1e4;
    CommonOpts ac_common;
    ac->add_option("--n", ac_n, "subcarrier count")->required();
    ac->add_option("--lambda", ac_lambda, "symbolic per-evaluation cost");
    ac->add_option("--overhead-low", ac_low, "error-correction overhead, low end");
    ac->add_option("--overhead-high", ac_high, "error-correction overhead, high end");
    add_common(ac, ac_common);

    auto* gp = app.add_subcommand("guess-prob", "random-guess agreement probabilities");
    std::vector<int> gp_n{64, 3300};
    int gp_lmax = 10;
    CommonOpts gp_common;
    gp->add_option("--n", gp_n, "subcarrier counts (repeatable)");
    gp->add_option("--l-max", gp_lmax, "report the CDF at this agreement bound");
    add_common(gp, gp_common);

    auto* ec = app.add_subcommand("effective-channel", "effective-channel grids and sparsity");
    int ec_n = 64, ec_paths = 3, ec_delay = 3;
    double ec_doppler = 1.0, ec_threshold = 1e-9;
    bool ec_fractional = false;
    std::string ec_key = "1", ec_mismatch = "2", ec_channel_file;
    std::optional<double> ec_c1, ec_c2;
    CommonOpts ec_common;
    ec->add_option("--n", ec_n, "subcarrier count");
    ec->add_option("--key", ec_key, "matched key rank (decimal string)");
    ec->add_option("--mismatched-key", ec_mismatch, "eavesdropper key rank");
    ec->add_option("--channel", ec_channel_file, "channel JSON to replay");
    ec->add_option("--paths", ec_paths, "number of paths when sampling");
    ec->add_option("--max-delay", ec_delay, "maximum path delay");
    ec->add_option("--max-doppler", ec_doppler, "maximum digital Doppler");
    ec->add_flag("--fractional-doppler", ec_fractional, "allow fractional Doppler");
    ec->add_option("--threshold", ec_threshold, "support threshold");
    ec->add_option("--c1", ec_c1, "first chirp frequency override");
    ec->add_option("--c2", ec_c2, "second chirp frequency override");
    add_common(ec, ec_common);

    auto* ber = app.add_subcommand("ber", "Monte Carlo BER experiment");
    BerCliOpts bo;
    std::string ber_eve = "random";
    CommonOpts ber_common;
    add_ber_options(ber, bo);
    ber->add_option("--eve", ber_eve, "eve strategy: random, bounded:L, fixed:RANK");
    add_common(ber, ber_common);

    auto* sweep = app.add_subcommand("ber-sweep-l", "Eve BER vs exact agreement count l");
    BerCliOpts so;
    std::string sweep_l = "0,16,32,48,64";
    CommonOpts sweep_common;
    add_ber_options(sweep, so);
    sweep->add_option("--l-values", sweep_l, "comma-separated agreement counts");
    add_common(sweep, sweep_common);

    auto* rp = app.add_subcommand("replay", "re-run a manifest bit-identically");
    std::string rp_path;
    rp->add_option("manifest", rp_path, "path to manifest.json")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (key->parsed()) return cmd_key(key_n, key_rank, key_perm, key_random, key_seed);
        if (ac->parsed()) return cmd_attack_cost(ac_n, ac_lambda, ac_low, ac_high, ac_common);
        if (gp->parsed()) return cmd_guess_prob(gp_n, gp_lmax, gp_common);
        if (ec->parsed())
            return cmd_effective_channel(ec_n, ec_doppler, ec_c1, ec_c2, ec_key, ec_mismatch,
                                         ec_channel_file, ec_paths, ec_delay, ec_fractional,
                                         ec_threshold, ec_common);
        if (ber->parsed()) {
            bo.eve = ber_eve;
            return cmd_ber(bo, ber_common, ber);
        }
        if (sweep->parsed()) return cmd_ber_sweep(so, sweep_l, sweep_common, sweep);
        if (rp->parsed()) return replay_manifest(rp_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
