#include "uamlink/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "uamlink/errors.hpp"
#include "uamlink/io.hpp"

#ifndef UAMLINK_BUNDLED_SCENARIO_DIR
#define UAMLINK_BUNDLED_SCENARIO_DIR ""
#endif

namespace uamlink {

namespace {

// Reads one YAML mapping, remembering which keys were consumed so leftovers can be rejected.
class Section {
public:
    Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
        if (node_ && !node_.IsNull() && !node_.IsMap())
            throw ConfigError(path_.empty() ? "<root>" : path_, "expected a mapping of keys");
    }

    bool has(const std::string& key) const { return present() && node_[key]; }

    template <typename T>
    void get(const std::string& key, T& out) {
        if (!has(key)) return;
        used_.insert(key);
        try {
            out = node_[key].as<T>();
        } catch (const YAML::Exception&) {
            throw ConfigError(field(key), "has the wrong type");
        }
    }

    Section child(const std::string& key) {
        used_.insert(key);
        return Section(has(key) ? node_[key] : YAML::Node(), field(key));
    }

    YAML::Node raw(const std::string& key) {
        used_.insert(key);
        return has(key) ? node_[key] : YAML::Node();
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    /// Rejects any key that no get/child/raw call asked for.
    void finish() const {
        if (!present()) return;
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (!used_.count(key)) throw ConfigError(field(key), "unknown key");
        }
    }

private:
    bool present() const { return node_ && node_.IsMap(); }

    YAML::Node node_;
    std::string path_;
    std::set<std::string> used_;
};

void read_position(Section sec, GeodeticPosition& p) {
    sec.get("latitude_deg", p.latitude_deg);
    sec.get("longitude_deg", p.longitude_deg);
    sec.finish();
    p.altitude_m = 0.0;
}

void read_elements(Section sec, OrbitalElements& el) {
    sec.get("semi_major_axis_km", el.semi_major_axis_km);
    sec.get("eccentricity", el.eccentricity);
    sec.get("inclination_deg", el.inclination_deg);
    sec.get("raan_deg", el.raan_deg);
    sec.get("argument_of_periapsis_deg", el.argument_of_periapsis_deg);
    sec.get("true_anomaly_deg", el.true_anomaly_deg);
    sec.get("epoch_s", el.epoch_s);
    sec.finish();
}

void read_cellular(Section sec, CellularParams& p) {
    sec.get("carrier_frequency_hz", p.carrier_frequency_hz);
    sec.get("channel_bandwidth_hz", p.channel_bandwidth_hz);
    sec.get("fdma_channels", p.fdma_channels);
    sec.get("path_loss_exponent", p.path_loss_exponent);
    sec.get("far_field_exponent", p.far_field_exponent);
    sec.get("antenna_gain_db", p.antenna_gain_db);
    sec.get("tx_power_w", p.tx_power_w);
    sec.get("noise_psd_dbm_hz", p.noise_psd_dbm_hz);
    sec.get("los_loss_db", p.los_loss_db);
    sec.get("nlos_loss_db", p.nlos_loss_db);
    sec.get("los_probability", p.los_probability);
    std::string model;
    sec.get("los_model", model);
    if (model == "elevation_sigmoid") {
        p.los_model = LosModel::elevation_sigmoid;
    } else if (!model.empty() && model != "constant") {
        throw ConfigError(sec.field("los_model"), "expected 'constant' or 'elevation_sigmoid'");
    }
    sec.get("sigmoid_a", p.sigmoid_a);
    sec.get("sigmoid_b", p.sigmoid_b);
    sec.get("fresnel_radius_m", p.fresnel_radius_m);
    sec.get("fresnel_altitude_m", p.fresnel_altitude_m);
    sec.finish();
}

void read_satellite(Section sec, SatelliteParams& p) {
    sec.get("carrier_frequency_hz", p.carrier_frequency_hz);
    sec.get("channel_bandwidth_hz", p.channel_bandwidth_hz);
    sec.get("fdma_channels", p.fdma_channels);
    sec.get("path_loss_exponent", p.path_loss_exponent);
    sec.get("antenna_gain_db", p.antenna_gain_db);
    sec.get("tx_power_w", p.tx_power_w);
    sec.get("noise_psd_dbm_hz", p.noise_psd_dbm_hz);
    sec.get("los_loss_db", p.los_loss_db);
    sec.get("min_elevation_deg", p.min_elevation_deg);
    sec.finish();
}

std::filesystem::path relative_to(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

bool is_whole(double v) { return std::isfinite(v) && v == std::floor(v); }

}  // namespace

void validate(const Scenario& s) {
    validate(s.trip);
    validate(s.budget.cellular);
    validate(s.budget.satellite);
    validate(s.message);
    validate(s.constellation, true);
    if (!(s.antenna_height_m >= 0.0 && std::isfinite(s.antenna_height_m)))
        throw ConfigError("base_stations.antenna_height_m", "must be >= 0");
    for (const auto& bs : s.base_stations) {
        try {
            validate(bs);
        } catch (const DomainError& ex) {
            throw ConfigError("base_stations", ex.what());
        }
    }
    if (!(s.fixed_delays.cellular_s >= 0.0))
        throw ConfigError("allocator.fixed_delay_cellular_s", "must be >= 0");
    if (!(s.fixed_delays.satellite_s >= 0.0))
        throw ConfigError("allocator.fixed_delay_satellite_s", "must be >= 0");
    if (s.budget.earth_radius_m != s.trip.earth_radius_m)
        throw ConfigError("earth.radius_m", "link budget and trip disagree on the Earth radius");
    if (s.imported_trajectory) {
        if (s.imported_trajectory->samples.empty())
            throw ConfigError("trip.trajectory_csv", "contains no samples");
        if (std::abs(s.imported_trajectory->slot_duration_s - s.trip.slot_duration_s) > 1e-9)
            throw ConfigError("trip.trajectory_csv", "sample spacing differs from trip.slot_duration_s");
    }
    if (s.message.sizes_bits.size() > 1) {
        const std::size_t slots = scenario_trajectory(s).size();
        if (s.message.sizes_bits.size() != slots)
            throw ConfigError("message.size_bits", "per-slot list has " +
                                                       std::to_string(s.message.sizes_bits.size()) +
                                                       " entries but the trip has " + std::to_string(slots) +
                                                       " slots");
    }
}

Scenario default_scenario() {
    Scenario s;
    s.name = "default";
    s.base_stations = place_base_stations(s.trip, 184, s.antenna_height_m);
    s.walker = WalkerSpec{};
    s.constellation = generate_walker_constellation(s.walker->base, s.walker->satellites, s.walker->planes);
    return s;
}

Scenario parse_scenario(std::string_view yaml_text, const std::filesystem::path& base_dir) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::Exception& ex) {
        throw ConfigError("", std::string("YAML parse error: ") + ex.what());
    }

    Scenario s;
    Section top(root, "");
    top.get("name", s.name);
    top.get("seed", s.seed);

    double earth_radius = kEarthRadius;
    {
        Section earth = top.child("earth");
        earth.get("radius_m", earth_radius);
        earth.finish();
    }
    s.trip.earth_radius_m = earth_radius;
    s.budget.earth_radius_m = earth_radius;

    {
        Section trip = top.child("trip");
        if (trip.has("origin")) read_position(trip.child("origin"), s.trip.origin);
        if (trip.has("destination")) read_position(trip.child("destination"), s.trip.destination);
        trip.get("cruise_altitude_m", s.trip.cruise_altitude_m);
        trip.get("average_speed_kmh", s.trip.average_speed_kmh);
        trip.get("slot_duration_s", s.trip.slot_duration_s);
        trip.get("climb_duration_min", s.trip.climb_duration_min);
        trip.get("descent_duration_min", s.trip.descent_duration_min);
        std::string trajectory_csv;
        trip.get("trajectory_csv", trajectory_csv);
        trip.finish();
        if (!trajectory_csv.empty())
            s.imported_trajectory = load_trajectory_csv(relative_to(base_dir, trajectory_csv));
    }

    int bs_count = 184;
    {
        Section bs = top.child("base_stations");
        bs.get("count", bs_count);
        bs.get("antenna_height_m", s.antenna_height_m);
        bs.finish();
        if (bs_count < 0 || bs_count == 1)
            throw ConfigError("base_stations.count", "must be 0 or at least 2");
    }

    {
        Section con = top.child("constellation");
        std::string file;
        con.get("file", file);
        if (!file.empty()) {
            if (con.has("satellites") || con.has("planes") || con.has("base_elements"))
                throw ConfigError("constellation.file", "cannot be combined with Walker parameters");
            s.constellation = load_constellation_csv(relative_to(base_dir, file));
        } else {
            WalkerSpec w;
            con.get("satellites", w.satellites);
            con.get("planes", w.planes);
            if (con.has("base_elements")) read_elements(con.child("base_elements"), w.base);
            if (w.satellites < 0) throw ConfigError("constellation.satellites", "must be >= 0");
            try {
                validate(w.base);
            } catch (const std::exception& ex) {
                throw ConfigError("constellation.base_elements", ex.what());
            }
            if (w.satellites > 0)
                s.constellation = generate_walker_constellation(w.base, w.satellites, w.planes);
            s.walker = w;
        }
        con.finish();
    }

    read_cellular(top.child("cellular"), s.budget.cellular);
    read_satellite(top.child("satellite"), s.budget.satellite);

    {
        Section msg = top.child("message");
        YAML::Node sizes = msg.raw("size_bits");
        if (sizes && !sizes.IsNull()) {
            try {
                if (sizes.IsSequence()) {
                    s.message.sizes_bits = sizes.as<std::vector<double>>();
                } else {
                    s.message.sizes_bits = {sizes.as<double>()};
                }
            } catch (const YAML::Exception&) {
                throw ConfigError("message.size_bits", "expected a number or a list of numbers");
            }
        }
        msg.get("expiry_slots", s.message.expiry_slots);
        msg.finish();
    }

    {
        Section alloc = top.child("allocator");
        alloc.get("fixed_delay_cellular_s", s.fixed_delays.cellular_s);
        alloc.get("fixed_delay_satellite_s", s.fixed_delays.satellite_s);
        alloc.finish();
    }

    {
        Section metrics = top.child("metrics");
        std::string mode;
        metrics.get("apdl_mode", mode);
        if (mode == "literal") {
            s.apdl_mode = ApdlMode::literal;
        } else if (!mode.empty() && mode != "capped") {
            throw ConfigError("metrics.apdl_mode", "expected 'capped' or 'literal'");
        }
        metrics.finish();
    }
    top.finish();

    validate(s.trip);
    if (bs_count > 0) s.base_stations = place_base_stations(s.trip, bs_count, s.antenna_height_m);
    validate(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read scenario file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    Scenario s = parse_scenario(buf.str(), path.parent_path().empty() ? "." : path.parent_path());
    if (s.name == "default") s.name = path.stem().string();
    return s;
}

std::filesystem::path resolve_scenario_path(const std::string& name_or_path) {
    namespace fs = std::filesystem;
    const fs::path direct(name_or_path);
    if (fs::is_regular_file(direct)) return direct;

    std::vector<fs::path> dirs;
    if (const char* env = std::getenv("UAMLINK_SCENARIO_DIR"); env && *env) dirs.emplace_back(env);
    if (std::string_view(UAMLINK_BUNDLED_SCENARIO_DIR).size() > 0) dirs.emplace_back(UAMLINK_BUNDLED_SCENARIO_DIR);
    for (const auto& dir : dirs) {
        for (const fs::path& candidate : {dir / name_or_path, dir / (name_or_path + ".yaml")}) {
            if (fs::is_regular_file(candidate)) return candidate;
        }
    }
    return direct;
}

Trajectory scenario_trajectory(const Scenario& s) {
    return s.imported_trajectory ? *s.imported_trajectory : build_trajectory(s.trip);
}

TripResult run(const Scenario& s) {
    const Trajectory traj = scenario_trajectory(s);
    const double dt = traj.slot_duration_s;
    std::vector<SlotRecord> records;
    records.reserve(traj.size());

    for (const TrajectorySample& sample : traj.samples) {
        try {
            const auto states = constellation_states(s.constellation, sample.time_s, s.budget.earth_radius_m);
            const auto candidates =
                candidate_rates(sample.slot, sample.position, s.base_stations, states, s.budget);
            const double size = s.message.size_at(static_cast<std::size_t>(sample.slot));
            const AllocationDecision decision = select_link(candidates, size, s.fixed_delays);
            const SlotLoss loss = slot_loss(size, decision.rate_bps, dt, s.message.expiry_slots);

            SlotRecord r;
            r.slot = sample.slot;
            r.time_s = sample.time_s;
            r.position = sample.position;
            r.cellular_visible = static_cast<int>(std::count_if(
                candidates.begin(), candidates.end(), [](const LinkCandidate& c) { return c.kind == LinkKind::cellular; }));
            r.satellites_visible = static_cast<int>(candidates.size()) - r.cellular_visible;
            r.selection = decision.selection;
            r.rate_bps = decision.rate_bps;
            r.delay_s = decision.delay_s;
            r.size_bits = size;
            r.delivered_bits = loss.delivered_bits;
            r.lost_bits = loss.lost_bits;
            records.push_back(r);
        } catch (const SimulationError&) {
            throw;
        } catch (const std::exception& ex) {
            throw SimulationError(sample.slot, ex.what());
        }
    }
    return summarize(std::move(records), dt, s.message.expiry_slots, s.apdl_mode);
}

TripStats compute_stats(const TripResult& result, const Scenario& s) {
    TripStats st;
    const auto n = result.records.size();
    if (n == 0) return st;
    double apdl_sum = 0.0, rate_sum = 0.0, cell_sum = 0.0, cruise_sum = 0.0;
    int cell_n = 0, cruise_n = 0;
    const double ceiling = s.antenna_height_m + s.budget.cellular.fresnel_altitude_m;
    for (std::size_t k = 0; k < n; ++k) {
        const SlotRecord& r = result.records[k];
        apdl_sum += result.apdl_series[k];
        rate_sum += r.rate_bps;
        if (!r.selection) {
            ++st.outage_slots;
        } else if (r.selection->kind == LinkKind::cellular) {
            ++st.cellular_slots;
        } else {
            ++st.satellite_slots;
        }
        if (r.position.altitude_m <= ceiling) {
            cell_sum += r.rate_bps;
            ++cell_n;
        } else {
            const bool sat = r.selection && r.selection->kind == LinkKind::satellite;
            cruise_sum += sat ? r.rate_bps : 0.0;
            ++cruise_n;
        }
    }
    st.mean_apdl_pct = apdl_sum / static_cast<double>(n);
    st.final_apdl_pct = result.final_apdl();
    st.mean_rate_bps = rate_sum / static_cast<double>(n);
    st.cellular_phase_mean_rate_bps = cell_n ? cell_sum / cell_n : 0.0;
    st.cruise_mean_rate_bps = cruise_n ? cruise_sum / cruise_n : 0.0;
    return st;
}

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::constellation_size: return "satellites";
        case SweepAxis::bs_count: return "basestations";
        case SweepAxis::message_size: return "message-size";
    }
    return "unknown";
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view text) {
    if (text == "satellites" || text == "constellation_size") return SweepAxis::constellation_size;
    if (text == "basestations" || text == "bs_count") return SweepAxis::bs_count;
    if (text == "message-size" || text == "message_size") return SweepAxis::message_size;
    return std::nullopt;
}

void validate(const SweepSpec& sw) {
    if (sw.values.empty()) throw ConfigError("sweep.values", "needs at least one value");
    for (double v : sw.values) {
        if (!(v > 0.0 && std::isfinite(v)))
            throw ConfigError("sweep.values", "values must be positive, got " + format_axis_value(v));
        if (sw.axis != SweepAxis::message_size && !is_whole(v))
            throw ConfigError("sweep.values", "counts must be whole numbers, got " + format_axis_value(v));
    }
}

Scenario apply_sweep_value(const Scenario& base, SweepAxis axis, double value) {
    Scenario s = base;
    switch (axis) {
        case SweepAxis::constellation_size: {
            if (value > static_cast<double>(base.constellation.size()))
                throw ConfigError("sweep.values", "constellation size " + format_axis_value(value) +
                                                      " exceeds the base constellation (" +
                                                      std::to_string(base.constellation.size()) + ")");
            s.constellation = base.constellation.prefix(static_cast<std::size_t>(value));
            if (s.walker) s.walker->satellites = static_cast<int>(value);
            break;
        }
        case SweepAxis::bs_count:
            s.base_stations = place_base_stations(s.trip, static_cast<int>(value), s.antenna_height_m);
            break;
        case SweepAxis::message_size:
            s.message.sizes_bits = {value};
            break;
    }
    s.name = base.name + "/" + std::string(to_string(axis)) + "-" + format_axis_value(value);
    validate(s);
    return s;
}

std::vector<SweepPoint> run_sweep(const SweepSpec& sw) {
    validate(sw);
    std::vector<double> values = sw.values;
    std::stable_sort(values.begin(), values.end());

    std::vector<std::future<SweepPoint>> jobs;
    jobs.reserve(values.size());
    for (double v : values) {
        jobs.push_back(std::async(std::launch::async, [&sw, v] {
            SweepPoint p;
            p.value = v;
            try {
                const Scenario s = apply_sweep_value(sw.base, sw.axis, v);
                p.result = run(s);
                p.stats = compute_stats(*p.result, s);
            } catch (const std::exception& ex) {
                p.error = ex.what();
            }
            return p;
        }));
    }
    std::vector<SweepPoint> out;
    out.reserve(jobs.size());
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

std::string format_axis_value(double value) {
    if (is_whole(value) && std::abs(value) < 1e15) return std::to_string(static_cast<long long>(value));
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

}  // namespace uamlink
