#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uamlink/allocator.hpp"
#include "uamlink/channel.hpp"
#include "uamlink/metrics.hpp"
#include "uamlink/orbit.hpp"
#include "uamlink/trajectory.hpp"

namespace uamlink {

/// Walker parameters the constellation was generated from, when not loaded from a file.
struct WalkerSpec {
    int satellites = 40;
    int planes = 5;
    OrbitalElements base;
};

struct Scenario {
    std::string name = "default";
    TripSpec trip;
    std::optional<Trajectory> imported_trajectory;
    double antenna_height_m = 30.0;
    std::vector<GeodeticPosition> base_stations;
    std::optional<WalkerSpec> walker;
    Constellation constellation;
    LinkBudget budget;
    MessageSchedule message;
    FixedDelays fixed_delays;
    ApdlMode apdl_mode = ApdlMode::capped;
    std::uint64_t seed = 0;  ///< recorded in outputs; the simulation itself is deterministic

    std::size_t bs_count() const { return base_stations.size(); }
    std::size_t satellite_count() const { return constellation.size(); }
};

/// Cross-module consistency: every component validates and message sizes cover the trip.
void validate(const Scenario& s);

/// All defaults applied: Boston to Washington D.C., 184 base stations, 40-satellite Walker set.
Scenario default_scenario();

/// Parses YAML text. Relative file references resolve against `base_dir`.
/// Throws ConfigError (with the dotted field path) for unknown keys or invalid values.
Scenario parse_scenario(std::string_view yaml_text,
                        const std::filesystem::path& base_dir = std::filesystem::current_path());

/// Loads and validates a scenario file. Throws IoError for unreadable paths.
Scenario load_scenario(const std::filesystem::path& path);

/// Existing file paths are returned as-is. Bare names such as `paper_baseline` are looked up
/// (with and without a `.yaml` suffix) in $UAMLINK_SCENARIO_DIR and then in the bundled
/// scenario directory. Returns the input unchanged when nothing matches.
std::filesystem::path resolve_scenario_path(const std::string& name_or_path);

/// Trajectory used by run(): the imported one if present, otherwise the generated profile.
Trajectory scenario_trajectory(const Scenario& s);

/// Per-slot propagate, enumerate, allocate, account. Deterministic.
/// Errors are rethrown as SimulationError carrying the slot index.
TripResult run(const Scenario& s);

/// Aggregates used by sweep curves and the figure data.
struct TripStats {
    double mean_apdl_pct = 0.0;
    double final_apdl_pct = 0.0;
    double mean_rate_bps = 0.0;
    /// Mean selected rate over slots at or below the top of the cellular coverage envelope.
    double cellular_phase_mean_rate_bps = 0.0;
    /// Mean satellite rate over slots above the envelope (outages count as zero).
    double cruise_mean_rate_bps = 0.0;
    int cellular_slots = 0;
    int satellite_slots = 0;
    int outage_slots = 0;
};

TripStats compute_stats(const TripResult& result, const Scenario& s);

enum class SweepAxis { constellation_size, bs_count, message_size };

std::string_view to_string(SweepAxis axis);
/// Accepts the library names and the CLI spellings (satellites, basestations, message-size).
std::optional<SweepAxis> parse_sweep_axis(std::string_view text);

struct SweepSpec {
    SweepAxis axis = SweepAxis::constellation_size;
    std::vector<double> values;
    Scenario base;
};

void validate(const SweepSpec& sw);

/// The base scenario with one axis value applied. Constellation sizes take nested prefixes
/// of the base constellation.
Scenario apply_sweep_value(const Scenario& base, SweepAxis axis, double value);

struct SweepPoint {
    double value = 0.0;
    std::optional<TripResult> result;
    std::optional<TripStats> stats;
    std::string error;  ///< set when this run failed; other runs still complete
};

/// One independent run per value, executed concurrently, returned in ascending value order.
std::vector<SweepPoint> run_sweep(const SweepSpec& sw);

/// Shortest decimal spelling used for directory and column names (`40`, `2.5`, `5000000`).
std::string format_axis_value(double value);

}  // namespace uamlink
