#include "uamlink/plotdata.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "uamlink/errors.hpp"
#include "uamlink/io.hpp"

namespace uamlink {

namespace {

std::vector<double> minutes(std::span<const SlotRecord> records) {
    std::vector<double> x;
    x.reserve(records.size());
    for (const auto& r : records) x.push_back(r.time_s / 60.0);
    return x;
}

template <typename F>
PlotSeries make_series(std::string name, SeriesKind kind, std::span<const SlotRecord> records, F&& value) {
    PlotSeries s{std::move(name), kind, minutes(records), {}};
    s.y.reserve(records.size());
    for (const auto& r : records) s.y.push_back(value(r));
    return s;
}

double rate_of_kind(const SlotRecord& r, LinkKind kind) {
    return r.selection && r.selection->kind == kind ? r.rate_bps / 1e6 : 0.0;
}

}  // namespace

void validate(const PlotSeries& s) {
    if (s.x.size() != s.y.size())
        throw DomainError("series '" + s.name + "': x and y lengths differ");
    for (std::size_t i = 1; i < s.x.size(); ++i) {
        if (!(s.x[i] > s.x[i - 1])) throw DomainError("series '" + s.name + "': x is not strictly increasing");
    }
}

std::vector<PlotTable> run_plot_tables(std::span<const SlotRecord> records) {
    PlotTable rate{"rate_profile.csv", "time_min", {}};
    rate.series.push_back(make_series("altitude_m", SeriesKind::rate_profile, records,
                                      [](const SlotRecord& r) { return r.position.altitude_m; }));
    rate.series.push_back(make_series("rate_mbps", SeriesKind::rate_profile, records,
                                      [](const SlotRecord& r) { return r.rate_bps / 1e6; }));
    rate.series.push_back(make_series("cellular_rate_mbps", SeriesKind::rate_profile, records,
                                      [](const SlotRecord& r) { return rate_of_kind(r, LinkKind::cellular); }));
    rate.series.push_back(make_series("satellite_rate_mbps", SeriesKind::rate_profile, records,
                                      [](const SlotRecord& r) { return rate_of_kind(r, LinkKind::satellite); }));

    PlotTable apdl{"apdl_profile.csv", "time_min", {}};
    apdl.series.push_back(make_series("apdl_pct", SeriesKind::apdl_profile, records,
                                      [](const SlotRecord& r) { return r.apdl_pct; }));
    return {rate, apdl};
}

std::vector<PlotTable> sweep_plot_tables(const std::string& axis, std::span<const LabelledRun> runs) {
    PlotTable apdl{"apdl_" + axis + ".csv", "time_min", {}};
    PlotTable sat{"satellite_rate_" + axis + ".csv", "time_min", {}};
    PlotTable cell{"cellular_rate_" + axis + ".csv", "time_min", {}};
    PlotSeries curve_apdl{"mean_apdl_pct", SeriesKind::sweep_curve, {}, {}};
    PlotSeries curve_rate{"mean_rate_mbps", SeriesKind::sweep_curve, {}, {}};

    for (const LabelledRun& run : runs) {
        const std::string name = axis + "-" + format_axis_value(run.value);
        apdl.series.push_back(make_series(name, SeriesKind::apdl_profile, run.records,
                                          [](const SlotRecord& r) { return r.apdl_pct; }));
        sat.series.push_back(make_series(name, SeriesKind::rate_profile, run.records,
                                         [](const SlotRecord& r) { return rate_of_kind(r, LinkKind::satellite); }));
        cell.series.push_back(make_series(name, SeriesKind::rate_profile, run.records,
                                          [](const SlotRecord& r) { return rate_of_kind(r, LinkKind::cellular); }));
        double apdl_sum = 0.0, rate_sum = 0.0;
        for (const auto& r : run.records) {
            apdl_sum += r.apdl_pct;
            rate_sum += r.rate_bps / 1e6;
        }
        const double n = run.records.empty() ? 1.0 : static_cast<double>(run.records.size());
        curve_apdl.x.push_back(run.value);
        curve_apdl.y.push_back(apdl_sum / n);
        curve_rate.x.push_back(run.value);
        curve_rate.y.push_back(rate_sum / n);
    }
    PlotTable curve{"sweep_curve_" + axis + ".csv", axis, {curve_apdl, curve_rate}};
    return {apdl, sat, cell, curve};
}

void write_plot_table(const PlotTable& table, std::ostream& out) {
    for (const auto& s : table.series) validate(s);
    const std::vector<double>* x = table.series.empty() ? nullptr : &table.series.front().x;
    for (const auto& s : table.series) {
        if (s.x != *x) throw DomainError(table.file + ": series '" + s.name + "' uses a different x axis");
    }
    out << table.x_label;
    for (const auto& s : table.series) out << ',' << s.name;
    out << '\n';
    if (!x) return;
    for (std::size_t i = 0; i < x->size(); ++i) {
        out << format_double((*x)[i]);
        for (const auto& s : table.series) out << ',' << format_double(s.y[i]);
        out << '\n';
    }
}

std::vector<std::filesystem::path> write_plot_data(const std::filesystem::path& results_dir,
                                                   const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    std::vector<PlotTable> tables;
    if (fs::is_regular_file(results_dir / kSweepManifestFile)) {
        std::ifstream in(results_dir / kSweepManifestFile);
        nlohmann::json manifest;
        try {
            manifest = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& ex) {
            throw IoError((results_dir / kSweepManifestFile).string() + ": " + ex.what());
        }
        const std::string axis = manifest.value("axis", "sweep");
        std::vector<LabelledRun> runs;
        for (const auto& run : manifest.at("runs")) {
            if (!run.contains("dir")) continue;
            runs.push_back({run.at("value").get<double>(),
                            read_slot_csv(results_dir / run.at("dir").get<std::string>() / kSlotsFile)});
        }
        if (runs.empty()) throw IoError(results_dir.string() + ": sweep has no successful runs");
        tables = sweep_plot_tables(axis, runs);
    } else if (fs::is_regular_file(results_dir / kSlotsFile)) {
        tables = run_plot_tables(read_slot_csv(results_dir / kSlotsFile));
    } else {
        throw IoError("no results in '" + results_dir.string() + "' (expected " + kSlotsFile + " or " +
                      kSweepManifestFile + ")");
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create directory '" + out_dir.string() + "': " + ec.message());
    std::vector<fs::path> written;
    for (const auto& t : tables) {
        const fs::path path = out_dir / t.file;
        std::ostringstream buf;
        write_plot_table(t, buf);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!(out << buf.str())) throw IoError("cannot write '" + path.string() + "'");
        written.push_back(path);
    }
    return written;
}

}  // namespace uamlink
