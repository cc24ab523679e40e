#include "cpafdm/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cpafdm/transforms.hpp"
#include "json.hpp"

namespace cpafdm {

namespace {
using cxd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

Eigen::MatrixXd shift_matrix_power(int n, int shift) {
    if (n < 1) throw std::invalid_argument("shift_matrix_power: N must be >= 1");
    if (shift < 0 || shift >= n)
        throw std::invalid_argument("shift_matrix_power: shift must be in [0, N); reduce mod N upstream");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int row = 0; row < n; ++row) m(row, (row + shift) % n) = 1.0;
    return m;
}

Eigen::VectorXcd doppler_phases(int n, double f) {
    if (n < 1) throw std::invalid_argument("doppler_phases: N must be >= 1");
    Eigen::VectorXcd d(n);
    for (int k = 0; k < n; ++k) {
        double frac = frac_of_product(f / static_cast<double>(n), static_cast<double>(k));
        double a = -kTwoPi * frac;
        d(k) = cxd(std::cos(a), std::sin(a));
    }
    return d;
}

Eigen::MatrixXcd doppler_matrix_power(int n, double f) {
    return doppler_phases(n, f).asDiagonal();
}

Eigen::VectorXcd prefix_phases(int n, int delay, double c1, PrefixPhase kind) {
    if (n < 1) throw std::invalid_argument("prefix_phases: N must be >= 1");
    if (delay < 0 || delay >= n)
        throw std::invalid_argument("prefix_phases: delay must be in [0, N)");
    Eigen::VectorXcd d = Eigen::VectorXcd::Ones(n);
    if (kind == PrefixPhase::plain) return d;
    for (int row = 0; row < delay; ++row) {
        // Row `row` carries phi(delay - row), phi(m) = c1*(N^2 - 2*N*m).
        double arg = static_cast<double>(n) * n - 2.0 * n * (delay - row);
        double frac = frac_of_product(c1, arg);
        double a = -kTwoPi * frac;
        d(row) = cxd(std::cos(a), std::sin(a));
    }
    return d;
}

Eigen::MatrixXcd prefix_phase_matrix(int n, int delay, double c1, PrefixPhase kind) {
    return prefix_phases(n, delay, c1, kind).asDiagonal();
}

DelayDopplerChannel build_channel(std::vector<PathParams> paths, int n, double c1,
                                  PrefixPhase kind) {
    if (n < 1) throw std::invalid_argument("build_channel: N must be >= 1");
    if (paths.empty()) throw std::invalid_argument("build_channel: empty path list");
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& p : paths) {
        if (p.delay < 0 || p.delay >= n)
            throw std::invalid_argument("build_channel: path delay must be in [0, N)");
        Eigen::VectorXcd phi = prefix_phases(n, p.delay, c1, kind);
        Eigen::VectorXcd z = doppler_phases(n, p.doppler);
        // Each path term has a single entry per row: h * phi_n * z_n at
        // column (n + delay) mod N.
        for (int row = 0; row < n; ++row)
            h(row, (row + p.delay) % n) += p.gain * phi(row) * z(row);
    }
    return DelayDopplerChannel{std::move(paths), n, c1, kind, std::move(h)};
}

void ChannelScenarioConfig::validate() const {
    if (n < 2) throw std::invalid_argument("channel config: N must be >= 2");
    if (num_paths < 1) throw std::invalid_argument("channel config: need at least one path");
    if (max_delay < 0 || max_delay >= n)
        throw std::invalid_argument("channel config: max_delay must be in [0, N)");
    if (max_doppler < 0) throw std::invalid_argument("channel config: max_doppler must be >= 0");
}

namespace {

std::vector<PathParams> draw_paths(const ChannelScenarioConfig& cfg, Rng& rng) {
    std::vector<PathParams> paths;
    paths.reserve(static_cast<std::size_t>(cfg.num_paths));
    double gain_var = 1.0 / static_cast<double>(cfg.num_paths);
    for (int p = 0; p < cfg.num_paths; ++p) {
        PathParams pp;
        pp.gain = rng.complex_gaussian(gain_var);
        pp.delay = (p == 0) ? 0
                            : static_cast<int>(rng.uniform_int(
                                  static_cast<std::uint64_t>(cfg.max_delay) + 1));
        double f = rng.uniform(-cfg.max_doppler, cfg.max_doppler);
        pp.doppler = cfg.fractional_doppler ? f : static_cast<double>(std::llround(f));
        paths.push_back(pp);
    }
    return paths;
}

}  // namespace

std::pair<DelayDopplerChannel, DelayDopplerChannel> sample_channel(
    const ChannelScenarioConfig& config, Rng& rng, double c1, PrefixPhase kind) {
    config.validate();
    DelayDopplerChannel bob = build_channel(draw_paths(config, rng), config.n, c1, kind);
    if (config.colocated) {
        DelayDopplerChannel eve = bob;
        return {std::move(bob), std::move(eve)};
    }
    DelayDopplerChannel eve = build_channel(draw_paths(config, rng), config.n, c1, kind);
    return {std::move(bob), std::move(eve)};
}

std::string DelayDopplerChannel::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["c1"] = c1;
    j["prefix"] = (prefix == PrefixPhase::chirp_periodic) ? "chirp_periodic" : "plain";
    auto& arr = j["paths"] = nlohmann::json::array();
    for (const auto& p : paths) {
        arr.push_back({{"gain_re", p.gain.real()},
                       {"gain_im", p.gain.imag()},
                       {"delay", p.delay},
                       {"doppler", p.doppler}});
    }
    return j.dump(2);
}

DelayDopplerChannel DelayDopplerChannel::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int n = j.at("n").get<int>();
    double c1 = j.at("c1").get<double>();
    PrefixPhase kind = (j.at("prefix").get<std::string>() == "plain")
                           ? PrefixPhase::plain
                           : PrefixPhase::chirp_periodic;
    std::vector<PathParams> paths;
    for (const auto& jp : j.at("paths")) {
        PathParams p;
        p.gain = {jp.at("gain_re").get<double>(), jp.at("gain_im").get<double>()};
        p.delay = jp.at("delay").get<int>();
        p.doppler = jp.at("doppler").get<double>();
        paths.push_back(p);
    }
    return build_channel(std::move(paths), n, c1, kind);
}

}  // namespace cpafdm
