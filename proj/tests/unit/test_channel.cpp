#include <cmath>
#include <random>

#include "doctest.h"
#include "uamlink/channel.hpp"
#include "uamlink/errors.hpp"
#include "uamlink/trajectory.hpp"

using namespace uamlink;

namespace {

// Free-space loss written in the textbook dB form: 10 nu log10(4 pi f d / c) - (nu/2) G_dB + L.
double oracle_path_loss(double nu, double f, double d, double g_db, double excess_db) {
    return 10.0 * nu * std::log10(4.0 * M_PI * f * d / 299792458.0) - nu / 2.0 * g_db + excess_db;
}

double oracle_rate(double pt, double pl_db, double bw, double n0_dbm_hz) {
    const double n0 = 1e-3 * std::pow(10.0, n0_dbm_hz / 10.0);
    const double snr_linear = pt * std::pow(10.0, -pl_db / 10.0) / (bw * n0);
    return bw * std::log(1.0 + snr_linear) / std::log(2.0);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("unit conversions") {
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(db_to_linear(20.0) == doctest::Approx(100.0));
    CHECK(dbm_per_hz_to_w_per_hz(-174.0) == doctest::Approx(3.981071705534973e-21));
    CHECK(CellularParams{}.total_bandwidth_hz() == 2.4e6);
    CHECK(SatelliteParams{}.total_bandwidth_hz() == 4.8e6);
}

TEST_CASE("cellular path loss against the dB-form oracle") {
    const CellularParams p;
    for (double d : {1.0, 35.0, 400.0, 1000.0, 2000.0}) {
        CHECK(rel(cellular_path_loss(d, PropagationMode::los, p), oracle_path_loss(2, 850e6, d, 12, 1)) < 1e-12);
        CHECK(rel(cellular_path_loss(d, PropagationMode::nlos, p), oracle_path_loss(2, 850e6, d, 12, 20)) < 1e-12);
        CHECK(rel(cellular_path_loss(d, PropagationMode::los, p, CellZone::beyond),
                  oracle_path_loss(4, 850e6, d, 12, 1)) < 1e-12);
    }
    CHECK(cellular_path_loss(1000.0, PropagationMode::nlos, p) -
              cellular_path_loss(1000.0, PropagationMode::los, p) ==
          doctest::Approx(19.0));
    CHECK_THROWS_AS(cellular_path_loss(0.0, PropagationMode::los, p), DomainError);
}

TEST_CASE("effective path loss blends in dB") {
    CHECK(effective_cellular_path_loss(80.0, 100.0, 0.5) == 90.0);
    CHECK(effective_cellular_path_loss(80.0, 100.0, 1.0) == 80.0);
    CHECK(effective_cellular_path_loss(80.0, 100.0, 0.0) == 100.0);
    CHECK_THROWS_AS(effective_cellular_path_loss(80.0, 100.0, 1.5), DomainError);
    CHECK_THROWS_AS(effective_cellular_path_loss(80.0, 100.0, -0.1), DomainError);
}

TEST_CASE("LEO path loss and rate against oracles") {
    const SatelliteParams p;
    for (double d : {550e3, 859e3, 1500e3, 3000e3}) {
        const double pl = oracle_path_loss(2, 11e9, d, 20, 0.1);
        CHECK(rel(leo_path_loss(d, p), pl) < 1e-12);
        CHECK(rel(satellite_rate(d, p), oracle_rate(8.0, pl, 4.8e6, -174.0)) < 1e-9);
    }
}

TEST_CASE("cellular rate against the oracle chain") {
    const CellularParams p;
    for (double d : {10.0, 400.0, 1270.0, 2000.0}) {
        const double pl = 0.5 * oracle_path_loss(2, 850e6, d, 12, 1) + 0.5 * oracle_path_loss(2, 850e6, d, 12, 20);
        CHECK(rel(cellular_rate(d, p, 0.5), oracle_rate(10.0, pl, 2.4e6, -174.0)) < 1e-9);
    }
}

TEST_CASE("shannon_rate examples") {
    CHECK(shannon_rate(10.0, 0.0, 1e6, 1e-20) == 0.0);
    // SNR of exactly 1 gives one bit per hertz
    CHECK(shannon_rate(1.0, 1.0, 1e6, 1e-6) == doctest::Approx(1e6));
    CHECK(shannon_rate(3.0, 1.0, 1e6, 1e-6) == doctest::Approx(2e6));
    CHECK_THROWS_AS(shannon_rate(1.0, 1.0, 0.0, 1e-20), DomainError);
    CHECK_THROWS_AS(shannon_rate(1.0, 1.0, 1e6, 0.0), DomainError);
    CHECK_THROWS_AS(shannon_rate(1.0, -1.0, 1e6, 1e-20), DomainError);
    CHECK(gain_from_path_loss(20.0) == doctest::Approx(0.1));
}

TEST_CASE("rates fall with distance and stay positive") {
    const CellularParams c;
    const SatelliteParams s;
    double prev_c = INFINITY, prev_s = INFINITY;
    for (double d = 1.0; d < 5e6; d *= 1.7) {
        const double rc = cellular_rate(d, c, 0.5);
        const double rs = satellite_rate(d, s);
        CHECK(rc > 0.0);
        CHECK(rs > 0.0);
        CHECK(rc < prev_c);
        CHECK(rs < prev_s);
        prev_c = rc;
        prev_s = rs;
    }
}

TEST_CASE("cellular beats satellite at cruise range") {
    const double rc = cellular_rate(1270.0, CellularParams{}, 0.5);
    const double rs = satellite_rate(859e3, SatelliteParams{});
    CHECK(rc > rs);
}

TEST_CASE("los_probability") {
    CellularParams p;
    CHECK(los_probability(p, 10.0) == 0.5);
    p.los_model = LosModel::elevation_sigmoid;
    const double a = 9.61, b = 0.16;
    for (double theta : {0.0, 10.0, 45.0, 90.0}) {
        const double expected = 1.0 / (1.0 + a * std::exp(-b * (theta - a)));
        CHECK(los_probability(p, theta) == doctest::Approx(expected));
    }
    CHECK(los_probability(p, 90.0) > los_probability(p, 5.0));
}

TEST_CASE("cellular visibility cylinder") {
    const CellularParams p;
    const GeodeticPosition bs{40.0, -75.0, 30.0};
    CHECK(cellular_visible({40.0, -75.0, 30.0}, bs, p));
    CHECK(cellular_visible({40.0, -75.0, 430.0}, bs, p));
    CHECK_FALSE(cellular_visible({40.0, -75.0, 430.5}, bs, p));
    CHECK_FALSE(cellular_visible({40.0, -75.0, 29.0}, bs, p));
    // 0.017 degrees of latitude is about 1.89 km, 0.019 about 2.11 km
    CHECK(cellular_visible({40.017, -75.0, 200.0}, bs, p));
    CHECK_FALSE(cellular_visible({40.019, -75.0, 200.0}, bs, p));
}

TEST_CASE("satellite visibility follows the elevation mask") {
    SatelliteParams p;
    const GeodeticPosition evtol{0.0, 0.0, 1000.0};
    CHECK(satellite_visible(evtol, lla_to_ecef({0.0, 0.0, 859e3}), p));
    CHECK_FALSE(satellite_visible(evtol, lla_to_ecef({0.0, 180.0, 859e3}), p));
    const auto low = lla_to_ecef({0.0, 20.0, 859e3});
    const double elev = elevation_angle(lla_to_ecef(evtol), low);
    CHECK(satellite_visible(evtol, low, p) == (elev >= 0.0));
    p.min_elevation_deg = elev + 1.0;
    CHECK_FALSE(satellite_visible(evtol, low, p));
}

TEST_CASE("candidate_rates") {
    const LinkBudget budget;
    const GeodeticPosition evtol{40.0, -75.0, 330.0};
    const std::vector<GeodeticPosition> bs{{40.0, -75.0, 30.0}, {41.0, -75.0, 30.0}, {40.001, -75.0, 30.0}};
    SatelliteState above;
    above.satellite_id = 7;
    above.ecef = lla_to_ecef({40.0, -75.0, 859e3});
    SatelliteState below;
    below.satellite_id = 8;
    below.ecef = lla_to_ecef({-40.0, 105.0, 859e3});
    const std::vector<SatelliteState> sats{above, below};

    const auto c = candidate_rates(12, evtol, bs, sats, budget);
    REQUIRE(c.size() == 3);
    CHECK(c[0].kind == LinkKind::cellular);
    CHECK(c[0].node_id == 1);
    CHECK(c[0].distance_m == doctest::Approx(300.0));
    CHECK(c[1].node_id == 3);
    CHECK(c[2].kind == LinkKind::satellite);
    CHECK(c[2].node_id == 7);
    CHECK(c[2].distance_m == doctest::Approx(859e3 - 330.0));
    for (const auto& cand : c) {
        CHECK(cand.slot == 12);
        CHECK(cand.rate_bps > 0.0);
    }
    CHECK(c[0].rate_bps == doctest::Approx(cellular_rate(c[0].distance_m, budget.cellular, 0.5)));
    CHECK(c[2].rate_bps == doctest::Approx(satellite_rate(c[2].distance_m, budget.satellite)));
    CHECK(c[0].rate_bps > c[2].rate_bps);

    CHECK(candidate_rates(0, evtol, {}, {}, budget).empty());
}

TEST_CASE("candidate_rates feeds the sigmoid the elevation seen from the antenna") {
    LinkBudget budget;
    budget.cellular.los_model = LosModel::elevation_sigmoid;
    const GeodeticPosition bs{40.0, -75.0, 30.0};
    const GeodeticPosition straight_up{40.0, -75.0, 330.0};
    const auto c = candidate_rates(0, straight_up, std::span(&bs, 1), {}, budget);
    REQUIRE(c.size() == 1);
    const double alpha = los_probability(budget.cellular, 90.0);
    CHECK(c[0].rate_bps == doctest::Approx(cellular_rate(c[0].distance_m, budget.cellular, alpha)));
}

TEST_CASE("parameter validation uses field paths") {
    CellularParams c;
    c.los_probability = 1.5;
    try {
        validate(c);
        FAIL("expected ConfigError");
    } catch (const ConfigError& ex) {
        CHECK(ex.field() == "cellular.los_probability");
    }
    SatelliteParams s;
    s.fdma_channels = 0;
    try {
        validate(s);
        FAIL("expected ConfigError");
    } catch (const ConfigError& ex) {
        CHECK(ex.field() == "satellite.fdma_channels");
    }
    CHECK_NOTHROW(validate(CellularParams{}));
    CHECK_NOTHROW(validate(SatelliteParams{}));
}
