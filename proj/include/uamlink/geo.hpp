#pragma once

#include <cmath>

namespace uamlink {

/// Mean Earth radius of the reference sphere [m].
inline constexpr double kEarthRadius = 6'371'000.0;
inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Latitude/longitude in degrees, altitude in meters above the reference sphere.
struct GeodeticPosition {
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double altitude_m = 0.0;

    bool operator==(const GeodeticPosition&) const = default;
};

/// Earth-centered, Earth-fixed Cartesian coordinates [m].
struct EcefPosition {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool operator==(const EcefPosition&) const = default;

    EcefPosition operator-(const EcefPosition& o) const { return {x - o.x, y - o.y, z - o.z}; }
    EcefPosition operator+(const EcefPosition& o) const { return {x + o.x, y + o.y, z + o.z}; }
    EcefPosition operator*(double s) const { return {x * s, y * s, z * s}; }

    double dot(const EcefPosition& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
};

/// Latitude in [-90, 90], longitude in (-180, 180], altitude >= -1000 m, all finite.
bool is_valid(const GeodeticPosition& p);

/// Throws DomainError naming the offending component.
void validate(const GeodeticPosition& p);

EcefPosition lla_to_ecef(const GeodeticPosition& p, double earth_radius = kEarthRadius);

/// Inverse of lla_to_ecef on the sphere. Throws GeometryError for the zero vector.
/// On the polar axis the longitude is reported as 0.
GeodeticPosition ecef_to_lla(const EcefPosition& p, double earth_radius = kEarthRadius);

double euclidean_distance(const EcefPosition& a, const EcefPosition& b);

/// Surface arc length between the ground projections of two points [m].
double great_circle_distance(const GeodeticPosition& a, const GeodeticPosition& b,
                             double earth_radius = kEarthRadius);

struct HorizontalVertical {
    double horizontal_m = 0.0;  ///< great-circle surface distance
    double vertical_m = 0.0;    ///< evtol altitude minus antenna altitude, may be negative
};

/// Splits the eVTOL-to-antenna offset into a surface distance and a height difference.
/// `antenna.altitude_m` is the antenna height.
HorizontalVertical horizontal_vertical_split(const GeodeticPosition& evtol,
                                             const GeodeticPosition& antenna,
                                             double earth_radius = kEarthRadius);

/// Angle [deg] between the observer's local horizontal plane (normal `up`) and the
/// observer-to-target ray. Throws GeometryError for coincident points or a zero `up`.
double elevation_angle(const EcefPosition& observer, const EcefPosition& up,
                       const EcefPosition& target);

/// Spherical-Earth overload: local up is the radial direction at the observer.
double elevation_angle(const EcefPosition& observer, const EcefPosition& target);

/// Point at `fraction` of the way along the great circle from origin to dest, at altitude 0.
/// Throws GeometryError for antipodal endpoints and DomainError for fraction outside [0, 1].
GeodeticPosition great_circle_point(const GeodeticPosition& origin, const GeodeticPosition& dest,
                                    double fraction);

}  // namespace uamlink
