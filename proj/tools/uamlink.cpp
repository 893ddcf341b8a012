// Command-line front end: run a scenario, sweep one parameter, or export plot tables.
//
//   uamlink run      --scenario paper_baseline --out results/
//   uamlink sweep    --scenario paper_baseline --axis satellites --values 10,20,30,40 --out sweep/
//   uamlink plotdata --results sweep/ [--out sweep/plots]
//
// Exit codes: 0 success, 1 scenario or I/O failure, 2 bad usage.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uamlink/io.hpp"
#include "uamlink/plotdata.hpp"
#include "uamlink/scenario.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

uamlink::Scenario load(const std::string& name) {
    return uamlink::load_scenario(uamlink::resolve_scenario_path(name));
}

void print_summary(const uamlink::TripResult& r, const uamlink::Scenario& s) {
    std::cout << "scenario:        " << s.name << '\n'
              << "slots:           " << r.records.size() << '\n'
              << "cdl_bits:        " << uamlink::format_double(r.cdl_bits) << '\n'
              << "trip_delay_s:    " << uamlink::format_double(r.trip_delay_s) << '\n'
              << "final_apdl_pct:  " << uamlink::format_double(r.final_apdl()) << '\n';
}

int cmd_run(const std::string& scenario, const std::string& out, const std::string& format) {
    const auto s = load(scenario);
    const auto result = uamlink::run(s);
    uamlink::persist(result, s, out, format);
    print_summary(result, s);
    return 0;
}

int cmd_sweep(const std::string& scenario, const std::string& axis_name, const std::vector<double>& values,
              const std::string& out) {
    uamlink::SweepSpec sw;
    sw.axis = *uamlink::parse_sweep_axis(axis_name);
    sw.values = values;
    sw.base = load(scenario);
    const auto points = uamlink::run_sweep(sw);
    uamlink::persist_sweep(sw, points, out);

    int failures = 0;
    std::cout << "axis: " << uamlink::to_string(sw.axis) << '\n';
    for (const auto& p : points) {
        std::cout << "  " << uamlink::format_axis_value(p.value) << ": ";
        if (p.stats) {
            std::cout << "mean_apdl_pct=" << uamlink::format_double(p.stats->mean_apdl_pct)
                      << " mean_rate_bps=" << uamlink::format_double(p.stats->mean_rate_bps) << '\n';
        } else {
            ++failures;
            std::cout << "error: " << p.error << '\n';
        }
    }
    return failures ? kExitFailure : 0;
}

int cmd_plotdata(const std::string& results, std::string out) {
    if (out.empty()) out = (std::filesystem::path(results) / "plots").string();
    for (const auto& path : uamlink::write_plot_data(results, out)) std::cout << path.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"In-flight connectivity simulator for eVTOL trips over cellular and LEO links"};
    app.require_subcommand(1);

    std::string scenario, out, format = "csv", axis, results;
    std::vector<double> values;

    auto* run = app.add_subcommand("run", "Simulate one scenario and write per-slot results");
    run->add_option("--scenario", scenario, "Scenario file or bundled scenario name")->required();
    run->add_option("--out", out, "Output directory")->required();
    run->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv"}));

    auto* sweep = app.add_subcommand("sweep", "Repeat a scenario over values of one parameter");
    sweep->add_option("--scenario", scenario, "Scenario file or bundled scenario name")->required();
    sweep->add_option("--axis", axis, "Swept parameter")
        ->required()
        ->check(CLI::IsMember({"satellites", "basestations", "message-size"}));
    sweep->add_option("--values", values, "Comma-separated axis values")->required()->delimiter(',');
    sweep->add_option("--out", out, "Output directory")->required();

    auto* plot = app.add_subcommand("plotdata", "Export plot-ready tables from a result directory");
    plot->add_option("--results", results, "Run or sweep output directory")->required();
    plot->add_option("--out", out, "Directory for the tables (default <results>/plots)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*run) return cmd_run(scenario, out, format);
        if (*sweep) return cmd_sweep(scenario, axis, values, out);
        return cmd_plotdata(results, out);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitFailure;
    }
}
