#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cpafdm/report_io.hpp"
#include "cpafdm/sim.hpp"

using namespace cpafdm;

namespace {

BerConfig small_config() {
    BerConfig c;
    c.n = 16;
    c.channel.n = 16;
    c.channel.num_paths = 2;
    c.channel.max_delay = 2;
    c.channel.max_doppler = 1.0;
    c.snr_grid_db = {0, 10, 20};
    c.trials_per_point = 200;
    c.master_seed = 12345;
    c.workers = 1;
    return c;
}

}  // namespace

TEST_CASE("identical config produces identical reports") {
    BerConfig c = small_config();
    BerReport a = run_ber(c);
    BerReport b = run_ber(c);
    CHECK(ber_csv(a) == ber_csv(b));
}

TEST_CASE("reports are bit-identical at any worker count") {
    BerConfig c = small_config();
    std::string baseline;
    for (int workers : {1, 2, 4, 8}) {
        c.workers = workers;
        std::string csv = ber_csv(run_ber(c));
        if (baseline.empty()) {
            baseline = csv;
        } else {
            CAPTURE(workers);
            CHECK(csv == baseline);
        }
    }
}

TEST_CASE("colocated Eve with the correct key performs exactly like Bob") {
    BerConfig c = small_config();
    c.scenario = Scenario::colocated;
    c.fresh_key_per_trial = false;
    Rng key_rng(99);
    c.alice_key = PermutationKey::random(16, key_rng);
    c.eve.kind = EveStrategy::Kind::fixed_key;
    c.eve.key = c.alice_key;
    BerReport r = run_ber(c);
    for (const auto& p : r.points) CHECK(p.bob_bit_errors == p.eve_bit_errors);
}

TEST_CASE("Bob at 60 dB is effectively error free") {
    BerConfig c;
    c.n = 64;
    c.channel.n = 64;
    c.snr_grid_db = {60.0};
    c.trials_per_point = 8000;  // > 1e6 bits at QPSK
    c.master_seed = 7;
    c.workers = 0;  // exercise the resolver; result must not depend on it
    BerReport r = run_ber(c);
    CHECK(r.points[0].total_bits >= 1000000);
    CHECK(r.points[0].bob_ber < 1e-4);
}

TEST_CASE("random-key Eve is pinned to chance level") {
    BerConfig c;
    c.n = 64;
    c.channel.n = 64;
    c.snr_grid_db = {0.0, 30.0};
    c.trials_per_point = 1200;
    c.master_seed = 31;
    BerReport r = run_ber(c);
    for (const auto& p : r.points) {
        CAPTURE(p.snr_db);
        CHECK(p.eve_ber > 0.45);
        CHECK(p.eve_ber < 0.55);
    }
    // Bob improves with SNR while Eve does not.
    CHECK(r.points[1].bob_ber < r.points[0].bob_ber);
}

TEST_CASE("remote and colocated Eve are statistically indistinguishable") {
    BerConfig c;
    c.n = 32;
    c.channel.n = 32;
    c.snr_grid_db = {10.0, 30.0};
    c.trials_per_point = 1500;
    c.master_seed = 77;
    BerReport remote = run_ber(c);
    c.scenario = Scenario::colocated;
    BerReport colocated = run_ber(c);
    for (std::size_t i = 0; i < remote.points.size(); ++i) {
        double p1 = remote.points[i].eve_ber;
        double p2 = colocated.points[i].eve_ber;
        double nn = static_cast<double>(remote.points[i].total_bits);
        double pooled = (p1 + p2) / 2.0;
        double sigma = std::sqrt(2.0 * pooled * (1.0 - pooled) / nn);
        CHECK(std::abs(p1 - p2) < 3.0 * sigma);
    }
}

TEST_CASE("fixed-point sweep trends from chance to matched performance") {
    BerConfig c;
    c.n = 64;
    c.channel.n = 64;
    c.scenario = Scenario::colocated;
    c.snr_grid_db = {30.0};
    c.trials_per_point = 400;
    c.master_seed = 13;
    auto entries = run_fixed_point_sweep(c, {0, 16, 32, 48, 64});
    REQUIRE(entries.size() == 5);

    // l = N: Eve holds Alice's key and sees Bob's exact signal.
    const BerPoint& matching = entries.back().report.points[0];
    CHECK(matching.eve_bit_errors == matching.bob_bit_errors);

    for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
        double p1 = entries[i].report.points[0].eve_ber;
        double p2 = entries[i + 1].report.points[0].eve_ber;
        double nn = static_cast<double>(entries[i].report.points[0].total_bits);
        double sigma = std::sqrt(std::max(p1, p2) * (1.0 - std::min(p1, p2)) / nn);
        CAPTURE(entries[i].l);
        CHECK(p2 < p1 + 3.0 * sigma);
    }
    CHECK(entries.back().report.points[0].eve_ber < entries.front().report.points[0].eve_ber);
}

TEST_CASE("bounded fixed-point strategy stays at chance level") {
    BerConfig c;
    c.n = 64;
    c.channel.n = 64;
    c.eve.kind = EveStrategy::Kind::fixed_point_bounded;
    c.eve.l_max = 10;
    c.snr_grid_db = {0.0, 30.0};
    c.trials_per_point = 1200;
    c.master_seed = 41;
    BerReport r = run_ber(c);
    for (const auto& p : r.points) {
        CAPTURE(p.snr_db);
        CHECK(p.eve_ber > 0.45);
        CHECK(p.eve_ber < 0.55);
    }
}

TEST_CASE("config validation catches inconsistent setups") {
    BerConfig c = small_config();
    c.snr_grid_db.clear();
    CHECK_THROWS_AS(run_ber(c), std::invalid_argument);

    c = small_config();
    c.channel.n = 8;
    CHECK_THROWS_AS(run_ber(c), std::invalid_argument);

    c = small_config();
    c.eve.kind = EveStrategy::Kind::fixed_point_exact;
    c.eve.l_exact = c.n - 1;
    CHECK_THROWS_AS(run_ber(c), std::invalid_argument);

    c = small_config();
    c.eve.kind = EveStrategy::Kind::fixed_key;
    c.eve.key.reset();
    CHECK_THROWS_AS(run_ber(c), std::invalid_argument);

    c = small_config();
    c.fresh_key_per_trial = false;
    CHECK_THROWS_AS(run_ber(c), std::invalid_argument);

    // Degenerate second chirp is rejected on the secure path.
    c = small_config();
    c.c2_override = 0.0;
    CHECK_THROWS_AS(run_ber(c), std::invalid_argument);
}

TEST_CASE("confidence intervals bracket the estimate") {
    BerConfig c = small_config();
    BerReport r = run_ber(c);
    for (const auto& p : r.points) {
        CHECK(p.bob_ci_low <= p.bob_ber);
        CHECK(p.bob_ber <= p.bob_ci_high);
        CHECK(p.eve_ci_low <= p.eve_ber);
        CHECK(p.eve_ber <= p.eve_ci_high);
        CHECK(p.bob_bit_errors <= p.total_bits);
        CHECK(p.eve_bit_errors <= p.total_bits);
    }
}
