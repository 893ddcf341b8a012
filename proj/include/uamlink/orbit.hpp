#pragma once

#include <cstddef>
#include <vector>

#include "uamlink/geo.hpp"

namespace uamlink {

/// Earth gravitational parameter [km^3/s^2].
inline constexpr double kEarthMu = 398'600.4418;
/// Earth rotation rate [rad/s]; the rotation angle is zero at simulation time 0.
inline constexpr double kEarthRotationRate = 7.2921159e-5;

/// Classical Keplerian elements. Angles in degrees, epoch in simulation seconds.
struct OrbitalElements {
    double semi_major_axis_km = 7230.0;
    double eccentricity = 0.0245;
    double inclination_deg = 53.94;
    double raan_deg = 0.0;
    double argument_of_periapsis_deg = 169.98;
    double true_anomaly_deg = 306.66;
    double epoch_s = 0.0;

    bool operator==(const OrbitalElements&) const = default;
};

void validate(const OrbitalElements& el);

/// Two-body period [s] derived from the semi-major axis.
double orbital_period(const OrbitalElements& el);

/// Specific orbital energy -mu/(2a) [km^2/s^2].
double specific_energy(const OrbitalElements& el);

/// Solves E - e sin E = M for E by safeguarded Newton iteration (bisection fallback).
/// Residual below 1e-12. Throws OrbitError for e outside [0, 1).
double solve_kepler(double mean_anomaly, double eccentricity);

/// Inertial (Earth-centered, non-rotating) position and velocity in meters and m/s.
struct InertialState {
    EcefPosition position;  ///< same Cartesian type; frame is inertial here
    EcefPosition velocity;
};

InertialState inertial_state(const OrbitalElements& el, double t_s);

/// Rotates an inertial vector into the Earth-fixed frame at simulation time t.
EcefPosition inertial_to_ecef(const EcefPosition& inertial, double t_s);

/// Earth-fixed position at simulation time t >= 0. Throws OrbitError if the orbit
/// passes below the Earth's surface.
EcefPosition propagate(const OrbitalElements& el, double t_s, double earth_radius = kEarthRadius);

struct SatelliteState {
    int satellite_id = 0;
    GeodeticPosition position;
    EcefPosition ecef;
    double time_s = 0.0;
};

struct Satellite {
    int id = 0;
    OrbitalElements elements;

    bool operator==(const Satellite&) const = default;
};

struct Constellation {
    std::vector<Satellite> satellites;

    std::size_t size() const { return satellites.size(); }
    bool empty() const { return satellites.empty(); }

    /// First `n` satellites, in order. Prefixes of one set are nested constellations.
    Constellation prefix(std::size_t n) const;
};

/// Unique ids and valid elements. `allow_empty` admits a zero-satellite network.
void validate(const Constellation& c, bool allow_empty = false);

std::vector<SatelliteState> constellation_states(const Constellation& c, double t_s,
                                                 double earth_radius = kEarthRadius);

/// `m` satellites over `planes` equally spaced planes, evenly phased within each plane.
/// Satellite k (id k+1) goes to plane k % planes, so every prefix samples all planes.
Constellation generate_walker_constellation(const OrbitalElements& base, int m, int planes);

}  // namespace uamlink
