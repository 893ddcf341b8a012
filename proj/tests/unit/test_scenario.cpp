#include <cmath>
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "uamlink/errors.hpp"
#include "uamlink/io.hpp"
#include "uamlink/scenario.hpp"

using namespace uamlink;

namespace {

std::string field_of(const std::string& yaml) {
    try {
        parse_scenario(yaml);
    } catch (const ConfigError& ex) {
        return ex.field();
    }
    return "<no error>";
}

// Replays the generated route at a fixed low altitude, inside the coverage of the
// evenly spaced base stations.
std::string low_altitude_trajectory_csv(const TripSpec& spec, int samples, double altitude) {
    std::ostringstream out;
    out << "time_s,lat_deg,lon_deg,alt_m\n";
    for (int k = 0; k < samples; ++k) {
        const auto p = great_circle_point(spec.origin, spec.destination, static_cast<double>(k) / (samples - 1));
        out << format_double(5.0 * k) << ',' << format_double(p.latitude_deg) << ','
            << format_double(p.longitude_deg) << ',' << altitude << '\n';
    }
    return out.str();
}

}  // namespace

TEST_CASE("empty scenario text takes every default") {
    const auto s = parse_scenario("");
    CHECK(s.bs_count() == 184);
    CHECK(s.satellite_count() == 40);
    CHECK(s.message.sizes_bits == std::vector<double>{5e6});
    CHECK(s.message.expiry_slots == 1);
    CHECK(s.budget.cellular.los_probability == 0.5);
    CHECK(s.trip.cruise_altitude_m == 1300.0);
    CHECK(s.apdl_mode == ApdlMode::capped);
    const auto d = default_scenario();
    CHECK(d.base_stations == s.base_stations);
    CHECK(d.constellation.satellites == s.constellation.satellites);
}

TEST_CASE("bundled baseline loads") {
    const auto s = load_scenario(testing::bundled_scenario("paper_baseline"));
    CHECK(s.name == "paper_baseline");
    CHECK(s.bs_count() == 184);
    CHECK(s.satellite_count() == 40);
    CHECK(s.budget.satellite.carrier_frequency_hz == 11e9);
    CHECK(s.budget.cellular.carrier_frequency_hz == 850e6);
    CHECK(s.walker);
    CHECK(s.walker->planes == 5);
}

TEST_CASE("invalid values are reported with their field path") {
    CHECK(field_of("cellular:\n  los_probability: 1.5\n") == "cellular.los_probability");
    CHECK(field_of("trip:\n  cruise_altitude_m: 5000\n") == "trip.cruise_altitude_m");
    CHECK(field_of("satellite:\n  fdma_channel: 12\n") == "satellite.fdma_channel");
    CHECK(field_of("bogus: 1\n") == "bogus");
    CHECK(field_of("trip:\n  origin: {latitude_deg: 42, longitude: 1}\n") == "trip.origin.longitude");
    CHECK(field_of("base_stations:\n  count: 1\n") == "base_stations.count");
    CHECK(field_of("constellation:\n  satellites: 40\n  planes: 6\n") == "constellation.planes");
    CHECK(field_of("metrics:\n  apdl_mode: mean\n") == "metrics.apdl_mode");
    CHECK(field_of("cellular:\n  tx_power_w: abc\n") == "cellular.tx_power_w");
}

TEST_CASE("expiry beyond one slot is not implemented") {
    CHECK_THROWS_AS(parse_scenario("message:\n  expiry_slots: 2\n"), NotImplementedError);
}

TEST_CASE("unreadable scenario path is an I/O error naming the path") {
    try {
        load_scenario("/nonexistent/dir/x.yaml");
        FAIL("expected IoError");
    } catch (const IoError& ex) {
        CHECK(std::string(ex.what()).find("/nonexistent/dir/x.yaml") != std::string::npos);
    }
}

TEST_CASE("scenario names resolve against the bundled directory") {
    const auto p = resolve_scenario_path("paper_baseline");
    CHECK(std::filesystem::is_regular_file(p));
    CHECK(p.filename() == "paper_baseline.yaml");
    CHECK(resolve_scenario_path("no_such_scenario") == std::filesystem::path("no_such_scenario"));
}

TEST_CASE("no satellites and a low-altitude route: cellular carries everything") {
    testing::TempDir dir("lowalt");
    const TripSpec spec;
    dir.write("route.csv", low_altitude_trajectory_csv(spec, 400, 200.0));
    const auto yaml = dir.write("s.yaml",
                                "constellation:\n  satellites: 0\n"
                                "trip:\n  trajectory_csv: route.csv\n");
    const auto s = load_scenario(yaml);
    CHECK(s.satellite_count() == 0);
    const auto r = run(s);
    REQUIRE(r.records.size() == 400);
    CHECK(r.cdl_bits == 0.0);
    CHECK(r.final_apdl() == 0.0);
    for (const auto& rec : r.records) {
        REQUIRE(rec.selection);
        CHECK(rec.selection->kind == LinkKind::cellular);
    }
}

TEST_CASE("no base stations and no satellites: everything is lost") {
    const auto s = parse_scenario("base_stations:\n  count: 0\nconstellation:\n  satellites: 0\n");
    const auto r = run(s);
    CHECK(r.final_apdl() == 100.0);
    CHECK(r.cdl_bits == r.total_bits);
    CHECK(r.trip_delay_s == doctest::Approx(5.0 * static_cast<double>(r.records.size())));
    for (const auto& rec : r.records) CHECK_FALSE(rec.selection);
}

TEST_CASE("baseline run: regime switch and determinism") {
    const auto s = default_scenario();
    const auto a = run(s);
    const auto b = run(s);
    CHECK(a == b);

    const double ceiling = s.antenna_height_m + s.budget.cellular.fresnel_altitude_m;
    int violations = 0;
    for (const auto& rec : a.records) {
        if (rec.cellular_visible > 0 && rec.selection->kind != LinkKind::cellular) ++violations;
        if (rec.position.altitude_m > ceiling) {
            CHECK(rec.cellular_visible == 0);
            if (rec.selection) CHECK(rec.selection->kind == LinkKind::satellite);
        }
        CHECK(rec.delivered_bits + rec.lost_bits == rec.size_bits);
    }
    CHECK(violations == 0);
    const auto st = compute_stats(a, s);
    CHECK(st.cellular_slots + st.satellite_slots + st.outage_slots == static_cast<int>(a.records.size()));
    CHECK(st.cellular_slots > 0);
    CHECK(st.satellite_slots > 0);
}

TEST_CASE("sweep axes and values") {
    CHECK(parse_sweep_axis("satellites") == SweepAxis::constellation_size);
    CHECK(parse_sweep_axis("basestations") == SweepAxis::bs_count);
    CHECK(parse_sweep_axis("message-size") == SweepAxis::message_size);
    CHECK_FALSE(parse_sweep_axis("planes"));
    CHECK(format_axis_value(40.0) == "40");
    CHECK(format_axis_value(5e6) == "5000000");
    CHECK(format_axis_value(2.5) == "2.5");

    const auto base = default_scenario();
    const auto ten = apply_sweep_value(base, SweepAxis::constellation_size, 10);
    REQUIRE(ten.satellite_count() == 10);
    for (std::size_t i = 0; i < 10; ++i) CHECK(ten.constellation.satellites[i] == base.constellation.satellites[i]);
    CHECK_THROWS_AS(apply_sweep_value(base, SweepAxis::constellation_size, 41), ConfigError);
    CHECK(apply_sweep_value(base, SweepAxis::bs_count, 25).bs_count() == 25);
    CHECK(apply_sweep_value(base, SweepAxis::message_size, 1e6).message.size_at(0) == 1e6);

    SweepSpec bad;
    bad.axis = SweepAxis::bs_count;
    bad.values = {2.5};
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad.values = {};
    CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("sweep runs are sorted, independent, and a bad value does not sink the rest") {
    SweepSpec sw;
    sw.base = default_scenario();
    sw.axis = SweepAxis::constellation_size;
    sw.values = {40, 10, 99};
    const auto points = run_sweep(sw);
    REQUIRE(points.size() == 3);
    CHECK(points[0].value == 10);
    CHECK(points[1].value == 40);
    CHECK(points[2].value == 99);
    CHECK(points[0].stats);
    CHECK(points[1].stats);
    CHECK_FALSE(points[2].result);
    CHECK_FALSE(points[2].error.empty());
    CHECK(*points[1].result == run(sw.base));
    CHECK(points[0].stats->mean_apdl_pct > points[1].stats->mean_apdl_pct);
}

TEST_CASE("persisted slots read back identically") {
    testing::TempDir dir("persist");
    const auto s = parse_scenario("constellation:\n  satellites: 10\n  planes: 5\n");
    const auto r = run(s);
    persist(r, s, dir.path() / "out");
    const auto back = read_slot_csv(dir.path() / "out" / kSlotsFile);
    REQUIRE(back.size() == r.records.size());
    for (std::size_t k = 0; k < back.size(); ++k) CHECK(back[k] == r.records[k]);
    CHECK(std::filesystem::exists(dir.path() / "out" / kSummaryFile));
    CHECK_THROWS_AS(persist(r, s, dir.path() / "out", "parquet"), IoError);
}

TEST_CASE("constellation file round trip") {
    testing::TempDir dir("constellation");
    const auto walker = generate_walker_constellation(OrbitalElements{}, 10, 5);
    std::ostringstream csv;
    write_constellation_csv(walker, csv);
    dir.write("sats.csv", "# ten satellites\n" + csv.str());
    const auto yaml = dir.write("s.yaml", "constellation:\n  file: sats.csv\n");
    const auto s = load_scenario(yaml);
    REQUIRE(s.satellite_count() == 10);
    for (std::size_t i = 0; i < 10; ++i) CHECK(s.constellation.satellites[i] == walker.satellites[i]);
    CHECK_FALSE(s.walker);

    dir.write("bad.csv", "id,a_km\n1,7000\n");
    const auto bad = dir.write("b.yaml", "constellation:\n  file: bad.csv\n");
    CHECK_THROWS(load_scenario(bad));
}

TEST_CASE("trajectory file validation") {
    testing::TempDir dir("traj");
    dir.write("uneven.csv", "time_s,lat_deg,lon_deg,alt_m\n0,40,-75,0\n5,40,-75,10\n11,40,-75,20\n");
    CHECK_THROWS_AS(load_trajectory_csv(dir.path() / "uneven.csv"), IoError);
    dir.write("ok.csv", "time_s,lat_deg,lon_deg,alt_m\n0,40,-75,0\n5,40,-75,10\n10,40,-75,20\n");
    const auto t = load_trajectory_csv(dir.path() / "ok.csv");
    CHECK(t.size() == 3);
    CHECK(t.slot_duration_s == 5.0);
    CHECK(t.samples[2].position.altitude_m == 20.0);
}
