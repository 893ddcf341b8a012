#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "uamlink/metrics.hpp"
#include "uamlink/orbit.hpp"
#include "uamlink/scenario.hpp"
#include "uamlink/trajectory.hpp"

namespace uamlink {

/// Column order of the per-slot CSV.
inline constexpr const char* kSlotCsvHeader =
    "k,time_s,lat,lon,alt_m,n_cell_visible,m_sat_visible,selected_kind,selected_id,"
    "r_opt_bps,delta_opt_s,delivered_bits,lost_bits,apdl_pct";

inline constexpr const char* kSlotsFile = "slots.csv";
inline constexpr const char* kSummaryFile = "summary.json";
inline constexpr const char* kSweepManifestFile = "sweep.json";
inline constexpr const char* kSweepCurveFile = "sweep_curve.csv";

/// Shortest round-trip decimal; `inf` for infinity.
std::string format_double(double v);

void write_slot_csv(const TripResult& result, std::ostream& out);
/// Parses a per-slot CSV. Size per slot is recovered as delivered + lost.
std::vector<SlotRecord> read_slot_csv(std::istream& in, const std::string& source = "<stream>");
std::vector<SlotRecord> read_slot_csv(const std::filesystem::path& path);

/// Aggregate record (CDL, trip delay, final APDL, ...) as pretty-printed JSON.
std::string summary_json(const TripResult& result, const Scenario& s);

/// Writes `slots.csv` and `summary.json` into `dir`, creating it if needed.
/// Only the csv format is supported. Throws IoError naming the path on failure.
void persist(const TripResult& result, const Scenario& s, const std::filesystem::path& dir,
             const std::string& format = "csv");

/// Per-value run directories, `sweep_curve.csv`, and the `sweep.json` manifest.
void persist_sweep(const SweepSpec& sw, const std::vector<SweepPoint>& points,
                   const std::filesystem::path& dir);

/// Directory name of one sweep run, e.g. `satellites-10`.
std::string sweep_run_dirname(SweepAxis axis, double value);

/// Constellation file: CSV with header `id,a_km,e,inc_deg,raan_deg,argp_deg,nu_deg`
/// (optional trailing `epoch_s`). Blank lines and lines starting with `#` are skipped.
Constellation load_constellation_csv(const std::filesystem::path& path);
void write_constellation_csv(const Constellation& c, std::ostream& out);

/// Trajectory replay: CSV with header `time_s,lat_deg,lon_deg,alt_m`, evenly spaced rows.
Trajectory load_trajectory_csv(const std::filesystem::path& path);

}  // namespace uamlink
