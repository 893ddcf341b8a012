#pragma once

#include <vector>

#include "uamlink/geo.hpp"

namespace uamlink {

/// Trip definition. Defaults describe the Boston to Washington D.C. route.
struct TripSpec {
    GeodeticPosition origin{42.3601, -71.0589, 0.0};
    GeodeticPosition destination{38.9072, -77.0369, 0.0};
    double cruise_altitude_m = 1300.0;
    double average_speed_kmh = 163.0;
    double slot_duration_s = 5.0;
    double climb_duration_min = 25.0;
    double descent_duration_min = 35.0;
    double earth_radius_m = kEarthRadius;
};

/// Throws ConfigError with the `trip.*` field path on the first violated bound.
void validate(const TripSpec& spec);

struct TrajectorySample {
    int slot = 0;
    double time_s = 0.0;
    GeodeticPosition position;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double slot_duration_s = 0.0;

    std::size_t size() const { return samples.size(); }
};

double route_length_m(const TripSpec& spec);
double trip_duration_s(const TripSpec& spec);

/// Altitude of the trapezoidal climb/cruise/descent profile at time t.
double profile_altitude(const TripSpec& spec, double t_s);

/// floor(duration / dt) + 1 samples at constant ground speed along the great circle.
/// The last sample is pinned to the destination at altitude 0.
/// Throws ConfigError when climb plus descent exceed the trip duration.
Trajectory build_trajectory(const TripSpec& spec);

/// `n` antennas evenly spaced along the route (fractions i / (n - 1)), each at `antenna_height_m`.
std::vector<GeodeticPosition> place_base_stations(const TripSpec& spec, int n,
                                                  double antenna_height_m = 30.0);

}  // namespace uamlink
