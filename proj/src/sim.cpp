#include "cpafdm/sim.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cpafdm/security.hpp"

namespace cpafdm {

Constellation constellation_for(Modulation m) {
    switch (m) {
        case Modulation::qpsk: return Constellation::qpsk();
        case Modulation::qam16: return Constellation::qam16();
        case Modulation::qam64: return Constellation::qam64();
    }
    throw std::invalid_argument("unknown modulation");
}

std::string to_string(Modulation m) {
    switch (m) {
        case Modulation::qpsk: return "qpsk";
        case Modulation::qam16: return "16qam";
        case Modulation::qam64: return "64qam";
    }
    return "?";
}

std::string to_string(Scenario s) {
    return s == Scenario::remote ? "remote" : "colocated";
}

Modulation modulation_from_string(const std::string& s) {
    if (s == "qpsk") return Modulation::qpsk;
    if (s == "16qam") return Modulation::qam16;
    if (s == "64qam") return Modulation::qam64;
    throw std::invalid_argument("unknown modulation \"" + s + "\" (qpsk, 16qam, 64qam)");
}

Scenario scenario_from_string(const std::string& s) {
    if (s == "remote") return Scenario::remote;
    if (s == "colocated") return Scenario::colocated;
    throw std::invalid_argument("unknown scenario \"" + s + "\" (remote, colocated)");
}

void BerConfig::validate() const {
    if (n < 2) throw std::invalid_argument("ber config: N must be >= 2");
    if (snr_grid_db.empty()) throw std::invalid_argument("ber config: SNR grid is empty");
    if (trials_per_point < 1) throw std::invalid_argument("ber config: trials_per_point must be >= 1");
    if (channel.n != n) throw std::invalid_argument("ber config: channel N does not match N");
    channel.validate();
    if (eve.kind == EveStrategy::Kind::fixed_point_bounded) {
        if (eve.l_max < 0 || eve.l_max > n)
            throw std::invalid_argument("ber config: eve l_max must be in [0, N]");
    }
    if (eve.kind == EveStrategy::Kind::fixed_point_exact) {
        if (eve.l_exact < 0 || eve.l_exact > n || eve.l_exact == n - 1)
            throw std::invalid_argument("ber config: eve l_exact must be in [0, N] and not N-1");
    }
    if (eve.kind == EveStrategy::Kind::fixed_key && !eve.key)
        throw std::invalid_argument("ber config: fixed_key strategy needs a key");
    if (!fresh_key_per_trial && !alice_key)
        throw std::invalid_argument("ber config: fixed Alice key policy needs alice_key");
    make_profile().require_distinct_second_chirp();
}

ChirpProfile BerConfig::make_profile() const {
    double c1 = c1_override ? *c1_override : ChirpProfile::default_c1(n, channel.max_doppler);
    double c2 = c2_override ? *c2_override : ChirpProfile::default_c2();
    return ChirpProfile(n, c1, c2);
}

int resolve_worker_count(int configured) {
    if (configured > 0) return configured;
    if (const char* env = std::getenv("CPAFDM_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) return w;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

namespace {

struct Wilson {
    double low, high;
};

Wilson wilson_interval(long long errors, long long total, double z = 1.959963984540054) {
    if (total == 0) return {0.0, 1.0};
    double p = static_cast<double>(errors) / static_cast<double>(total);
    double nn = static_cast<double>(total);
    double z2 = z * z;
    double denom = 1.0 + z2 / nn;
    double center = (p + z2 / (2.0 * nn)) / denom;
    double hw = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, center - hw), std::min(1.0, center + hw)};
}

// Inverse-CDF table over l in [0, l_max] for the bounded strategy.
std::vector<double> conditional_l_cdf(int n, int l_max) {
    GuessDistribution gd = guess_distribution(n);
    double total = 0.0;
    for (int l = 0; l <= l_max; ++l)
        if (l != n - 1) total += gd.pmf[static_cast<std::size_t>(l)];
    std::vector<double> cdf(static_cast<std::size_t>(l_max) + 1, 0.0);
    double acc = 0.0;
    for (int l = 0; l <= l_max; ++l) {
        if (l != n - 1) acc += gd.pmf[static_cast<std::size_t>(l)] / total;
        cdf[static_cast<std::size_t>(l)] = acc;
    }
    cdf.back() = 1.0;
    return cdf;
}

struct TrialTotals {
    long long bob_errors = 0;
    long long eve_errors = 0;
};

long long count_bit_errors(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    long long e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) e += (a[i] != b[i]) ? 1 : 0;
    return e;
}

struct EngineContext {
    const BerConfig* cfg;
    ChirpProfile profile;
    Constellation constellation;
    std::vector<double> bounded_cdf;  // empty unless bounded strategy
    // Shared fixed draws (used when the corresponding fresh_* flag is off)
    std::optional<std::pair<DelayDopplerChannel, DelayDopplerChannel>> fixed_channels;
    std::optional<PermutationKey> fixed_alice_key;
};

TrialTotals run_trial(const EngineContext& ctx, int snr_index, int trial, double sigma2) {
    const BerConfig& cfg = *ctx.cfg;
    Rng rng(derive_seed(cfg.master_seed, static_cast<std::uint64_t>(snr_index),
                        static_cast<std::uint64_t>(trial)));

    ChannelScenarioConfig ch = cfg.channel;
    ch.colocated = (cfg.scenario == Scenario::colocated);

    const auto& [bob_ch, eve_ch] =
        cfg.fresh_channel_per_trial
            ? sample_channel(ch, rng, ctx.profile.c1, cfg.prefix)
            : *ctx.fixed_channels;

    PermutationKey alice_key = cfg.fresh_key_per_trial
                                   ? PermutationKey::random(cfg.n, rng)
                                   : *ctx.fixed_alice_key;

    PermutationKey eve_key = [&]() {
        switch (cfg.eve.kind) {
            case EveStrategy::Kind::random_key:
                return PermutationKey::random(cfg.n, rng);
            case EveStrategy::Kind::fixed_point_bounded: {
                double u = rng.uniform();
                int l = 0;
                while (l < static_cast<int>(ctx.bounded_cdf.size()) - 1 &&
                       u > ctx.bounded_cdf[static_cast<std::size_t>(l)])
                    ++l;
                return PermutationKey::from_perm(
                    sample_perm_with_fixed_points(cfg.n, l, alice_key.perm(), rng));
            }
            case EveStrategy::Kind::fixed_point_exact:
                return PermutationKey::from_perm(
                    sample_perm_with_fixed_points(cfg.n, cfg.eve.l_exact, alice_key.perm(), rng));
            case EveStrategy::Kind::fixed_key:
                return *cfg.eve.key;
        }
        throw std::logic_error("unreachable eve strategy");
    }();

    const int bits_per_trial = cfg.n * ctx.constellation.bits_per_symbol();
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(bits_per_trial));
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.uniform_bit());

    DaftTransform alice_tx(ctx.profile, alice_key);
    Eigen::VectorXcd x = ctx.constellation.map_bits(bits);
    Eigen::VectorXcd s = modulate(x, alice_tx);

    Eigen::VectorXcd r_bob = receive(s, bob_ch.matrix, sigma2, rng);
    Eigen::VectorXcd r_eve;
    if (cfg.scenario == Scenario::colocated) {
        // Co-located Eve observes the identical channel and received vector.
        if (!(bob_ch.matrix.array() == eve_ch.matrix.array()).all())
            throw std::logic_error("colocated scenario produced distinct channels");
        r_eve = r_bob;
    } else {
        r_eve = receive(s, eve_ch.matrix, sigma2, rng);
    }

    Eigen::VectorXcd bob_soft = mmse_equalize(r_bob, bob_ch.matrix, sigma2, alice_tx);
    DaftTransform eve_rx(ctx.profile, eve_key);
    Eigen::VectorXcd eve_soft = mmse_equalize(r_eve, eve_ch.matrix, sigma2, eve_rx);

    TrialTotals t;
    t.bob_errors = count_bit_errors(bits, ctx.constellation.demap_symbols(bob_soft));
    t.eve_errors = count_bit_errors(bits, ctx.constellation.demap_symbols(eve_soft));
    return t;
}

}  // namespace

BerReport run_ber(const BerConfig& config) {
    config.validate();
    auto t0 = std::chrono::steady_clock::now();

    EngineContext ctx{&config, config.make_profile(), constellation_for(config.modulation), {}, {}, {}};
    if (config.eve.kind == EveStrategy::Kind::fixed_point_bounded)
        ctx.bounded_cdf = conditional_l_cdf(config.n, config.eve.l_max);
    if (!config.fresh_channel_per_trial) {
        ChannelScenarioConfig ch = config.channel;
        ch.colocated = (config.scenario == Scenario::colocated);
        Rng rng(derive_seed(config.master_seed, 0xC0FFEEull, 0));
        ctx.fixed_channels = sample_channel(ch, rng, ctx.profile.c1, config.prefix);
    }
    if (!config.fresh_key_per_trial) ctx.fixed_alice_key = config.alice_key;

    const int workers = resolve_worker_count(config.workers);
    const int trials = config.trials_per_point;
    const long long bits_per_trial =
        static_cast<long long>(config.n) * ctx.constellation.bits_per_symbol();

    BerReport report;
    report.config = config;

    for (std::size_t si = 0; si < config.snr_grid_db.size(); ++si) {
        double snr_db = config.snr_grid_db[si];
        double sigma2 = std::pow(10.0, -snr_db / 10.0);

        std::vector<TrialTotals> partial(static_cast<std::size_t>(workers));
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                TrialTotals local;
                try {
                    for (int t = w; t < trials; t += workers) {
                        try {
                            TrialTotals tt = run_trial(ctx, static_cast<int>(si), t, sigma2);
                            local.bob_errors += tt.bob_errors;
                            local.eve_errors += tt.eve_errors;
                        } catch (const std::exception& e) {
                            std::ostringstream os;
                            os << "trial failed at snr_index=" << si << " snr_db=" << snr_db
                               << " trial=" << t << ": " << e.what();
                            throw std::runtime_error(os.str());
                        }
                    }
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
                partial[static_cast<std::size_t>(w)] = local;
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);

        BerPoint pt;
        pt.snr_db = snr_db;
        for (const auto& p : partial) {
            pt.bob_bit_errors += p.bob_errors;
            pt.eve_bit_errors += p.eve_errors;
        }
        pt.total_bits = bits_per_trial * trials;
        pt.bob_ber = static_cast<double>(pt.bob_bit_errors) / static_cast<double>(pt.total_bits);
        pt.eve_ber = static_cast<double>(pt.eve_bit_errors) / static_cast<double>(pt.total_bits);
        Wilson wb = wilson_interval(pt.bob_bit_errors, pt.total_bits);
        Wilson we = wilson_interval(pt.eve_bit_errors, pt.total_bits);
        pt.bob_ci_low = wb.low;
        pt.bob_ci_high = wb.high;
        pt.eve_ci_low = we.low;
        pt.eve_ci_high = we.high;
        report.points.push_back(pt);
    }

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::vector<FixedPointSweepEntry> run_fixed_point_sweep(const BerConfig& config,
                                                        const std::vector<int>& l_values) {
    std::vector<FixedPointSweepEntry> out;
    for (int l : l_values) {
        BerConfig c = config;
        c.eve.kind = EveStrategy::Kind::fixed_point_exact;
        c.eve.l_exact = l;
        out.push_back({l, run_ber(c)});
    }
    return out;
}

}  // namespace cpafdm
