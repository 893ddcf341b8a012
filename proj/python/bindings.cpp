#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "uamlink/allocator.hpp"
#include "uamlink/channel.hpp"
#include "uamlink/errors.hpp"
#include "uamlink/geo.hpp"
#include "uamlink/io.hpp"
#include "uamlink/orbit.hpp"
#include "uamlink/plotdata.hpp"
#include "uamlink/scenario.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace uamlink;

namespace {

py::object selection_kind(const std::optional<LinkSelection>& s) {
    if (!s) return py::none();
    return py::str(std::string(to_string(s->kind)));
}

py::object selection_id(const std::optional<LinkSelection>& s) {
    if (!s) return py::none();
    return py::int_(s->node_id);
}

SweepAxis axis_from(const std::string& name) {
    const auto axis = parse_sweep_axis(name);
    if (!axis) throw ConfigError("sweep.axis", "unknown axis '" + name + "'");
    return *axis;
}

void register_errors(py::module_& m) {
    // Derived types are registered after their bases so they are matched first.
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
    py::register_exception<OrbitError>(m, "OrbitError", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NotImplementedError>(m, "NotImplementedError", PyExc_NotImplementedError);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "eVTOL in-flight connectivity simulator over hybrid cellular / LEO networks";
    register_errors(m);

    py::enum_<LinkKind>(m, "LinkKind")
        .value("cellular", LinkKind::cellular)
        .value("satellite", LinkKind::satellite);

    py::class_<GeodeticPosition>(m, "GeodeticPosition")
        .def(py::init<double, double, double>(), py::arg("latitude_deg"), py::arg("longitude_deg"),
             py::arg("altitude_m") = 0.0)
        .def_readwrite("latitude_deg", &GeodeticPosition::latitude_deg)
        .def_readwrite("longitude_deg", &GeodeticPosition::longitude_deg)
        .def_readwrite("altitude_m", &GeodeticPosition::altitude_m)
        .def("__repr__", [](const GeodeticPosition& p) {
            return "GeodeticPosition(" + format_double(p.latitude_deg) + ", " + format_double(p.longitude_deg) +
                   ", " + format_double(p.altitude_m) + ")";
        });

    py::class_<EcefPosition>(m, "EcefPosition")
        .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z"))
        .def_readwrite("x", &EcefPosition::x)
        .def_readwrite("y", &EcefPosition::y)
        .def_readwrite("z", &EcefPosition::z)
        .def("norm", &EcefPosition::norm);

    m.def("lla_to_ecef", &lla_to_ecef, py::arg("position"), py::arg("earth_radius") = kEarthRadius);
    m.def("ecef_to_lla", &ecef_to_lla, py::arg("position"), py::arg("earth_radius") = kEarthRadius);
    m.def("great_circle_distance", &great_circle_distance, py::arg("a"), py::arg("b"),
          py::arg("earth_radius") = kEarthRadius);

    py::class_<OrbitalElements>(m, "OrbitalElements")
        .def(py::init<>())
        .def_readwrite("semi_major_axis_km", &OrbitalElements::semi_major_axis_km)
        .def_readwrite("eccentricity", &OrbitalElements::eccentricity)
        .def_readwrite("inclination_deg", &OrbitalElements::inclination_deg)
        .def_readwrite("raan_deg", &OrbitalElements::raan_deg)
        .def_readwrite("argument_of_periapsis_deg", &OrbitalElements::argument_of_periapsis_deg)
        .def_readwrite("true_anomaly_deg", &OrbitalElements::true_anomaly_deg)
        .def_readwrite("epoch_s", &OrbitalElements::epoch_s);

    m.def("solve_kepler", &solve_kepler, py::arg("mean_anomaly"), py::arg("eccentricity"));
    m.def("orbital_period", &orbital_period, py::arg("elements"));
    m.def("propagate", &propagate, py::arg("elements"), py::arg("t_s"), py::arg("earth_radius") = kEarthRadius);

    m.def("cellular_rate",
          [](double distance_m, double alpha) { return cellular_rate(distance_m, CellularParams{}, alpha); },
          py::arg("distance_m"), py::arg("los_probability") = 0.5,
          "Cellular Shannon rate [bit/s] under the default link budget.");
    m.def("satellite_rate", [](double distance_m) { return satellite_rate(distance_m, SatelliteParams{}); },
          py::arg("distance_m"), "Satellite Shannon rate [bit/s] under the default link budget.");

    py::class_<LinkCandidate>(m, "LinkCandidate")
        .def(py::init([](LinkKind kind, int node_id, double rate_bps, double distance_m, int slot) {
                 return LinkCandidate{kind, node_id, distance_m, rate_bps, slot};
             }),
             py::arg("kind"), py::arg("node_id"), py::arg("rate_bps"), py::arg("distance_m") = 0.0,
             py::arg("slot") = 0)
        .def_readwrite("kind", &LinkCandidate::kind)
        .def_readwrite("node_id", &LinkCandidate::node_id)
        .def_readwrite("rate_bps", &LinkCandidate::rate_bps)
        .def_readwrite("distance_m", &LinkCandidate::distance_m)
        .def_readwrite("slot", &LinkCandidate::slot);

    py::class_<AllocationDecision>(m, "AllocationDecision")
        .def_property_readonly("kind", [](const AllocationDecision& d) { return selection_kind(d.selection); })
        .def_property_readonly("node_id", [](const AllocationDecision& d) { return selection_id(d.selection); })
        .def_readonly("selected_index", &AllocationDecision::selected_index)
        .def_readonly("rate_bps", &AllocationDecision::rate_bps)
        .def_readonly("delay_s", &AllocationDecision::delay_s)
        .def_readonly("assignment", &AllocationDecision::assignment)
        .def_property_readonly("outage", &AllocationDecision::outage);

    m.def("select_link",
          [](const std::vector<LinkCandidate>& c, double size_bits) { return select_link(c, size_bits); },
          py::arg("candidates"), py::arg("size_bits"));
    m.def("bilp_oracle",
          [](const std::vector<LinkCandidate>& c, double size_bits) { return bilp_oracle(c, size_bits); },
          py::arg("candidates"), py::arg("size_bits"));

    py::class_<Scenario>(m, "Scenario")
        .def_readwrite("name", &Scenario::name)
        .def_property_readonly("bs_count", &Scenario::bs_count)
        .def_property_readonly("satellite_count", &Scenario::satellite_count)
        .def_property_readonly("slot_duration_s", [](const Scenario& s) { return s.trip.slot_duration_s; })
        .def_property_readonly("message_sizes_bits", [](const Scenario& s) { return s.message.sizes_bits; })
        .def_readonly("seed", &Scenario::seed);

    m.def("default_scenario", &default_scenario);
    m.def("parse_scenario", &parse_scenario, py::arg("yaml_text"), py::arg("base_dir") = std::filesystem::path("."));
    m.def("load_scenario_file", &load_scenario, py::arg("path"));
    m.def("resolve_scenario_path", &resolve_scenario_path, py::arg("name_or_path"));
    m.def("apply_sweep_value",
          [](const Scenario& s, const std::string& axis, double value) {
              return apply_sweep_value(s, axis_from(axis), value);
          },
          py::arg("scenario"), py::arg("axis"), py::arg("value"));

    py::class_<SlotRecord>(m, "SlotRecord")
        .def_readonly("slot", &SlotRecord::slot)
        .def_readonly("time_s", &SlotRecord::time_s)
        .def_readonly("position", &SlotRecord::position)
        .def_readonly("cellular_visible", &SlotRecord::cellular_visible)
        .def_readonly("satellites_visible", &SlotRecord::satellites_visible)
        .def_property_readonly("kind", [](const SlotRecord& r) { return selection_kind(r.selection); })
        .def_property_readonly("node_id", [](const SlotRecord& r) { return selection_id(r.selection); })
        .def_readonly("rate_bps", &SlotRecord::rate_bps)
        .def_readonly("delay_s", &SlotRecord::delay_s)
        .def_readonly("size_bits", &SlotRecord::size_bits)
        .def_readonly("delivered_bits", &SlotRecord::delivered_bits)
        .def_readonly("lost_bits", &SlotRecord::lost_bits)
        .def_readonly("apdl_pct", &SlotRecord::apdl_pct);

    py::class_<TripResult>(m, "TripResult")
        .def_readonly("records", &TripResult::records)
        .def_readonly("cdl_bits", &TripResult::cdl_bits)
        .def_readonly("trip_delay_s", &TripResult::trip_delay_s)
        .def_readonly("total_bits", &TripResult::total_bits)
        .def_readonly("apdl_series", &TripResult::apdl_series)
        .def_property_readonly("final_apdl", &TripResult::final_apdl)
        .def("__len__", [](const TripResult& r) { return r.records.size(); })
        .def("slots_csv", [](const TripResult& r) {
            std::ostringstream out;
            write_slot_csv(r, out);
            return out.str();
        });

    py::class_<TripStats>(m, "TripStats")
        .def_readonly("mean_apdl_pct", &TripStats::mean_apdl_pct)
        .def_readonly("final_apdl_pct", &TripStats::final_apdl_pct)
        .def_readonly("mean_rate_bps", &TripStats::mean_rate_bps)
        .def_readonly("cellular_phase_mean_rate_bps", &TripStats::cellular_phase_mean_rate_bps)
        .def_readonly("cruise_mean_rate_bps", &TripStats::cruise_mean_rate_bps)
        .def_readonly("cellular_slots", &TripStats::cellular_slots)
        .def_readonly("satellite_slots", &TripStats::satellite_slots)
        .def_readonly("outage_slots", &TripStats::outage_slots);

    m.def("run", &run, py::arg("scenario"), py::call_guard<py::gil_scoped_release>());
    m.def("compute_stats", &compute_stats, py::arg("result"), py::arg("scenario"));
    m.def("persist", &persist, py::arg("result"), py::arg("scenario"), py::arg("out_dir"),
          py::arg("format") = "csv");
    m.def("summary_json", &summary_json, py::arg("result"), py::arg("scenario"));

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("value", &SweepPoint::value)
        .def_readonly("result", &SweepPoint::result)
        .def_readonly("stats", &SweepPoint::stats)
        .def_readonly("error", &SweepPoint::error)
        .def_property_readonly("ok", [](const SweepPoint& p) { return p.result.has_value(); });

    m.def("sweep",
          [](const Scenario& base, const std::string& axis, const std::vector<double>& values,
             const std::optional<std::filesystem::path>& out_dir) {
              SweepSpec sw;
              sw.base = base;
              sw.axis = axis_from(axis);
              sw.values = values;
              std::vector<SweepPoint> points;
              {
                  py::gil_scoped_release release;
                  points = run_sweep(sw);
                  if (out_dir) persist_sweep(sw, points, *out_dir);
              }
              return points;
          },
          py::arg("scenario"), py::arg("axis"), py::arg("values"), py::arg("out_dir") = py::none(),
          "Runs one scenario per axis value ('satellites', 'basestations' or 'message-size').");

    m.def("write_plot_data", &write_plot_data, py::arg("results_dir"), py::arg("out_dir"));
    m.def("read_slot_csv", py::overload_cast<const std::filesystem::path&>(&read_slot_csv), py::arg("path"));

    m.attr("SLOT_CSV_HEADER") = kSlotCsvHeader;
#ifdef VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
