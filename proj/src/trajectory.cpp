#include "uamlink/trajectory.hpp"

#include <cmath>
#include <string>

#include "uamlink/errors.hpp"

namespace uamlink {

namespace {

void check_position(const GeodeticPosition& p, const char* field) {
    try {
        validate(p);
    } catch (const DomainError& ex) {
        throw ConfigError(field, ex.what());
    }
}

// Number of whole slots after the first sample.
long last_slot(const TripSpec& spec) {
    return static_cast<long>(std::floor(trip_duration_s(spec) / spec.slot_duration_s));
}

}  // namespace

void validate(const TripSpec& spec) {
    check_position(spec.origin, "trip.origin");
    check_position(spec.destination, "trip.destination");
    if (!(spec.cruise_altitude_m >= 600.0 && spec.cruise_altitude_m <= 2000.0))
        throw ConfigError("trip.cruise_altitude_m", "must lie in [600, 2000] m");
    if (!(spec.average_speed_kmh >= 110.0 && spec.average_speed_kmh <= 300.0))
        throw ConfigError("trip.average_speed_kmh", "must lie in [110, 300] km/h");
    if (!(spec.slot_duration_s > 0.0 && std::isfinite(spec.slot_duration_s)))
        throw ConfigError("trip.slot_duration_s", "must be > 0");
    if (!(spec.climb_duration_min >= 0.0))
        throw ConfigError("trip.climb_duration_min", "must be >= 0");
    if (!(spec.descent_duration_min >= 0.0))
        throw ConfigError("trip.descent_duration_min", "must be >= 0");
    if (!(spec.earth_radius_m > 0.0)) throw ConfigError("earth.radius_m", "must be > 0");
    if (route_length_m(spec) <= 0.0)
        throw ConfigError("trip.destination", "coincides with the origin");
}

double route_length_m(const TripSpec& spec) {
    return great_circle_distance(spec.origin, spec.destination, spec.earth_radius_m);
}

double trip_duration_s(const TripSpec& spec) {
    return route_length_m(spec) / (spec.average_speed_kmh / 3.6);
}

double profile_altitude(const TripSpec& spec, double t_s) {
    const double total = trip_duration_s(spec);
    const double climb = spec.climb_duration_min * 60.0;
    const double descent = spec.descent_duration_min * 60.0;
    const double cruise = spec.cruise_altitude_m;
    if (t_s <= 0.0 || t_s >= total) return 0.0;
    if (t_s < climb) return cruise * t_s / climb;
    if (t_s > total - descent) return cruise * (total - t_s) / descent;
    return cruise;
}

Trajectory build_trajectory(const TripSpec& spec) {
    validate(spec);
    const double total = trip_duration_s(spec);
    if ((spec.climb_duration_min + spec.descent_duration_min) * 60.0 > total)
        throw ConfigError("trip", "climb and descent (" +
                                      std::to_string(spec.climb_duration_min + spec.descent_duration_min) +
                                      " min) exceed the trip duration (" +
                                      std::to_string(total / 60.0) + " min)");
    const long k_last = last_slot(spec);
    if (k_last < 1) throw ConfigError("trip.slot_duration_s", "longer than the whole trip");

    // The profile is laid over k_last whole slots so the final sample lands exactly on the
    // destination; the implied ground speed differs from the average by < one slot / trip.
    TripSpec fitted = spec;
    const double fitted_total = static_cast<double>(k_last) * spec.slot_duration_s;
    fitted.average_speed_kmh = route_length_m(spec) / fitted_total * 3.6;

    Trajectory traj;
    traj.slot_duration_s = spec.slot_duration_s;
    traj.samples.reserve(static_cast<std::size_t>(k_last) + 1);
    for (long k = 0; k <= k_last; ++k) {
        const double t = static_cast<double>(k) * spec.slot_duration_s;
        const double fraction = static_cast<double>(k) / static_cast<double>(k_last);
        TrajectorySample s;
        s.slot = static_cast<int>(k);
        s.time_s = t;
        s.position = great_circle_point(spec.origin, spec.destination, fraction);
        s.position.altitude_m = k == k_last ? 0.0 : profile_altitude(fitted, t);
        traj.samples.push_back(s);
    }
    return traj;
}

std::vector<GeodeticPosition> place_base_stations(const TripSpec& spec, int n,
                                                  double antenna_height_m) {
    if (n < 2) throw ConfigError("base_stations.count", "must be >= 2 to span the route");
    std::vector<GeodeticPosition> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        GeodeticPosition p = great_circle_point(spec.origin, spec.destination,
                                                static_cast<double>(i) / (n - 1));
        p.altitude_m = antenna_height_m;
        out.push_back(p);
    }
    return out;
}

}  // namespace uamlink
