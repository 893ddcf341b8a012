#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uamlink/metrics.hpp"

namespace uamlink {

enum class SeriesKind { rate_profile, apdl_profile, sweep_curve };

struct PlotSeries {
    std::string name;
    SeriesKind kind = SeriesKind::rate_profile;
    std::vector<double> x;
    std::vector<double> y;
};

/// Equal lengths and strictly increasing x; throws DomainError otherwise.
void validate(const PlotSeries& s);

/// Several series sharing one x axis, written as one wide CSV.
struct PlotTable {
    std::string file;
    std::string x_label;
    std::vector<PlotSeries> series;
};

/// Rate and altitude against time in minutes (`rate_profile.csv`) and the APDL profile
/// (`apdl_profile.csv`) of a single run.
std::vector<PlotTable> run_plot_tables(std::span<const SlotRecord> records);

/// One labelled run of a sweep.
struct LabelledRun {
    double value = 0.0;
    std::vector<SlotRecord> records;
};

/// Per-axis-value APDL, satellite rate and cellular rate profiles plus the sweep curve.
/// Series are named `<axis>-<value>`.
std::vector<PlotTable> sweep_plot_tables(const std::string& axis, std::span<const LabelledRun> runs);

void write_plot_table(const PlotTable& table, std::ostream& out);

/// Reads a run directory (slots.csv) or a sweep directory (sweep.json) and writes the tables
/// into `out_dir`. Returns the written paths. Throws IoError when `results_dir` holds neither.
std::vector<std::filesystem::path> write_plot_data(const std::filesystem::path& results_dir,
                                                   const std::filesystem::path& out_dir);

}  // namespace uamlink
