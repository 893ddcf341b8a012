#include "uamlink/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "uamlink/errors.hpp"

namespace uamlink {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
        while (!field.empty() && field.front() == ' ') field.erase(field.begin());
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& text, const std::string& where) {
    if (text == "inf") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) throw IoError(where + ": cannot parse number '" + text + "'");
    return v;
}

int parse_int(const std::string& text, const std::string& where) {
    int v = 0;
    const char* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) throw IoError(where + ": cannot parse integer '" + text + "'");
    return v;
}

bool skip_line(const std::string& line) {
    const auto first = line.find_first_not_of(" \t\r");
    return first == std::string::npos || line[first] == '#';
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    return in;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

nlohmann::ordered_json stats_json(const TripStats& st) {
    nlohmann::ordered_json j;
    j["mean_apdl_pct"] = st.mean_apdl_pct;
    j["final_apdl_pct"] = st.final_apdl_pct;
    j["mean_rate_bps"] = st.mean_rate_bps;
    j["cellular_phase_mean_rate_bps"] = st.cellular_phase_mean_rate_bps;
    j["cruise_mean_rate_bps"] = st.cruise_mean_rate_bps;
    j["cellular_slots"] = st.cellular_slots;
    j["satellite_slots"] = st.satellite_slots;
    j["outage_slots"] = st.outage_slots;
    return j;
}

}  // namespace

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_slot_csv(const TripResult& result, std::ostream& out) {
    out << kSlotCsvHeader << '\n';
    for (const SlotRecord& r : result.records) {
        out << r.slot << ',' << format_double(r.time_s) << ',' << format_double(r.position.latitude_deg) << ','
            << format_double(r.position.longitude_deg) << ',' << format_double(r.position.altitude_m) << ','
            << r.cellular_visible << ',' << r.satellites_visible << ','
            << (r.selection ? to_string(r.selection->kind) : std::string_view("none")) << ','
            << (r.selection ? r.selection->node_id : 0) << ',' << format_double(r.rate_bps) << ','
            << format_double(r.delay_s) << ',' << format_double(r.delivered_bits) << ','
            << format_double(r.lost_bits) << ',' << format_double(r.apdl_pct) << '\n';
    }
}

std::vector<SlotRecord> read_slot_csv(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) throw IoError(source + ": empty file, expected a header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSlotCsvHeader) throw IoError(source + ": unexpected header '" + line + "'");

    std::vector<SlotRecord> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (skip_line(line)) continue;
        const std::string where = source + ":" + std::to_string(lineno);
        const auto f = split_csv_line(line);
        if (f.size() != 14) throw IoError(where + ": expected 14 columns, got " + std::to_string(f.size()));
        SlotRecord r;
        r.slot = parse_int(f[0], where);
        r.time_s = parse_double(f[1], where);
        r.position = {parse_double(f[2], where), parse_double(f[3], where), parse_double(f[4], where)};
        r.cellular_visible = parse_int(f[5], where);
        r.satellites_visible = parse_int(f[6], where);
        if (f[7] == "cellular" || f[7] == "satellite") {
            r.selection = LinkSelection{f[7] == "cellular" ? LinkKind::cellular : LinkKind::satellite,
                                        parse_int(f[8], where)};
        } else if (f[7] != "none") {
            throw IoError(where + ": unknown link kind '" + f[7] + "'");
        }
        r.rate_bps = parse_double(f[9], where);
        r.delay_s = parse_double(f[10], where);
        r.delivered_bits = parse_double(f[11], where);
        r.lost_bits = parse_double(f[12], where);
        r.apdl_pct = parse_double(f[13], where);
        r.size_bits = r.delivered_bits + r.lost_bits;
        out.push_back(r);
    }
    return out;
}

std::vector<SlotRecord> read_slot_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_slot_csv(in, path.string());
}

std::string summary_json(const TripResult& result, const Scenario& s) {
    nlohmann::ordered_json j;
    j["scenario"] = s.name;
    j["seed"] = s.seed;
    j["slots"] = result.records.size();
    j["slot_duration_s"] = result.slot_duration_s;
    j["expiry_slots"] = result.expiry_slots;
    j["base_stations"] = s.bs_count();
    j["satellites"] = s.satellite_count();
    j["apdl_mode"] = s.apdl_mode == ApdlMode::capped ? "capped" : "literal";
    j["total_bits"] = result.total_bits;
    j["cdl_bits"] = result.cdl_bits;
    j["trip_delay_s"] = result.trip_delay_s;
    j["final_apdl_pct"] = result.final_apdl();
    j["stats"] = stats_json(compute_stats(result, s));
    return j.dump(2) + "\n";
}

void persist(const TripResult& result, const Scenario& s, const std::filesystem::path& dir,
             const std::string& format) {
    if (format != "csv") throw IoError("unsupported output format '" + format + "' (only csv)");
    ensure_dir(dir);
    std::ostringstream csv;
    write_slot_csv(result, csv);
    write_file(dir / kSlotsFile, csv.str());
    write_file(dir / kSummaryFile, summary_json(result, s));
}

std::string sweep_run_dirname(SweepAxis axis, double value) {
    return std::string(to_string(axis)) + "-" + format_axis_value(value);
}

void persist_sweep(const SweepSpec& sw, const std::vector<SweepPoint>& points,
                   const std::filesystem::path& dir) {
    ensure_dir(dir);
    nlohmann::ordered_json manifest;
    manifest["axis"] = std::string(to_string(sw.axis));
    manifest["scenario"] = sw.base.name;
    manifest["runs"] = nlohmann::ordered_json::array();

    std::ostringstream curve;
    curve << "value,mean_apdl_pct,final_apdl_pct,mean_rate_bps,cellular_phase_mean_rate_bps,"
             "cruise_mean_rate_bps,status\n";
    for (const SweepPoint& p : points) {
        nlohmann::ordered_json run;
        run["value"] = p.value;
        run["label"] = format_axis_value(p.value);
        if (p.result && p.stats) {
            const std::string sub = sweep_run_dirname(sw.axis, p.value);
            const Scenario s = apply_sweep_value(sw.base, sw.axis, p.value);
            persist(*p.result, s, dir / sub);
            run["dir"] = sub;
            run["stats"] = stats_json(*p.stats);
            curve << format_axis_value(p.value) << ',' << format_double(p.stats->mean_apdl_pct) << ','
                  << format_double(p.stats->final_apdl_pct) << ',' << format_double(p.stats->mean_rate_bps)
                  << ',' << format_double(p.stats->cellular_phase_mean_rate_bps) << ','
                  << format_double(p.stats->cruise_mean_rate_bps) << ",ok\n";
        } else {
            run["error"] = p.error;
            curve << format_axis_value(p.value) << ",,,,,,error\n";
        }
        manifest["runs"].push_back(run);
    }
    write_file(dir / kSweepCurveFile, curve.str());
    write_file(dir / kSweepManifestFile, manifest.dump(2) + "\n");
}

Constellation load_constellation_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    const std::string source = path.string();
    std::string line;
    int lineno = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++lineno;
        if (skip_line(line)) continue;
        header = split_csv_line(line);
        break;
    }
    const std::vector<std::string> expected{"id", "a_km", "e", "inc_deg", "raan_deg", "argp_deg", "nu_deg"};
    auto with_epoch = expected;
    with_epoch.emplace_back("epoch_s");
    if (header != expected && header != with_epoch)
        throw IoError(source + ": header must be id,a_km,e,inc_deg,raan_deg,argp_deg,nu_deg[,epoch_s]");

    Constellation c;
    while (std::getline(in, line)) {
        ++lineno;
        if (skip_line(line)) continue;
        const std::string where = source + ":" + std::to_string(lineno);
        const auto f = split_csv_line(line);
        if (f.size() != header.size())
            throw IoError(where + ": expected " + std::to_string(header.size()) + " columns");
        Satellite sat;
        sat.id = parse_int(f[0], where);
        sat.elements.semi_major_axis_km = parse_double(f[1], where);
        sat.elements.eccentricity = parse_double(f[2], where);
        sat.elements.inclination_deg = parse_double(f[3], where);
        sat.elements.raan_deg = parse_double(f[4], where);
        sat.elements.argument_of_periapsis_deg = parse_double(f[5], where);
        sat.elements.true_anomaly_deg = parse_double(f[6], where);
        sat.elements.epoch_s = f.size() == 8 ? parse_double(f[7], where) : 0.0;
        c.satellites.push_back(sat);
    }
    try {
        validate(c, true);
    } catch (const ConfigError& ex) {
        throw ConfigError("constellation.file", source + ": " + ex.what());
    }
    return c;
}

void write_constellation_csv(const Constellation& c, std::ostream& out) {
    out << "id,a_km,e,inc_deg,raan_deg,argp_deg,nu_deg,epoch_s\n";
    for (const auto& s : c.satellites) {
        const auto& e = s.elements;
        out << s.id << ',' << format_double(e.semi_major_axis_km) << ',' << format_double(e.eccentricity) << ','
            << format_double(e.inclination_deg) << ',' << format_double(e.raan_deg) << ','
            << format_double(e.argument_of_periapsis_deg) << ',' << format_double(e.true_anomaly_deg) << ','
            << format_double(e.epoch_s) << '\n';
    }
}

Trajectory load_trajectory_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    const std::string source = path.string();
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    Trajectory traj;
    while (std::getline(in, line)) {
        ++lineno;
        if (skip_line(line)) continue;
        const auto f = split_csv_line(line);
        if (!header_seen) {
            if (f != std::vector<std::string>{"time_s", "lat_deg", "lon_deg", "alt_m"})
                throw IoError(source + ": header must be time_s,lat_deg,lon_deg,alt_m");
            header_seen = true;
            continue;
        }
        const std::string where = source + ":" + std::to_string(lineno);
        if (f.size() != 4) throw IoError(where + ": expected 4 columns");
        TrajectorySample s;
        s.slot = static_cast<int>(traj.samples.size());
        s.time_s = parse_double(f[0], where);
        s.position = {parse_double(f[1], where), parse_double(f[2], where), parse_double(f[3], where)};
        try {
            validate(s.position);
        } catch (const DomainError& ex) {
            throw IoError(where + ": " + ex.what());
        }
        traj.samples.push_back(s);
    }
    if (traj.samples.size() < 2) throw IoError(source + ": need at least two samples");
    traj.slot_duration_s = traj.samples[1].time_s - traj.samples[0].time_s;
    if (!(traj.slot_duration_s > 0.0)) throw IoError(source + ": time must be strictly increasing");
    for (std::size_t k = 1; k < traj.samples.size(); ++k) {
        const double step = traj.samples[k].time_s - traj.samples[k - 1].time_s;
        if (std::abs(step - traj.slot_duration_s) > 1e-6 * traj.slot_duration_s)
            throw IoError(source + ": rows must be evenly spaced in time (row " + std::to_string(k + 1) + ")");
    }
    return traj;
}

}  // namespace uamlink
