#include "uamlink/geo.hpp"

#include <algorithm>
#include <string>

#include "uamlink/errors.hpp"

namespace uamlink {

namespace {

// Maps any longitude onto (-180, 180].
double wrap_longitude(double lon_deg) {
    double wrapped = std::fmod(lon_deg, 360.0);
    if (wrapped <= -180.0) wrapped += 360.0;
    if (wrapped > 180.0) wrapped -= 360.0;
    return wrapped;
}

EcefPosition unit_vector(const GeodeticPosition& p) {
    const double lat = deg2rad(p.latitude_deg);
    const double lon = deg2rad(p.longitude_deg);
    return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

// Angle between two unit vectors, stable for both tiny and near-pi separations.
double central_angle(const EcefPosition& u, const EcefPosition& v) {
    const EcefPosition c{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
    return std::atan2(c.norm(), u.dot(v));
}

}  // namespace

bool is_valid(const GeodeticPosition& p) {
    return std::isfinite(p.latitude_deg) && std::isfinite(p.longitude_deg) &&
           std::isfinite(p.altitude_m) && p.latitude_deg >= -90.0 && p.latitude_deg <= 90.0 &&
           p.longitude_deg > -180.0 && p.longitude_deg <= 180.0 && p.altitude_m >= -1000.0;
}

void validate(const GeodeticPosition& p) {
    if (!(std::isfinite(p.latitude_deg) && p.latitude_deg >= -90.0 && p.latitude_deg <= 90.0))
        throw DomainError("latitude " + std::to_string(p.latitude_deg) + " outside [-90, 90]");
    if (!(std::isfinite(p.longitude_deg) && p.longitude_deg > -180.0 && p.longitude_deg <= 180.0))
        throw DomainError("longitude " + std::to_string(p.longitude_deg) + " outside (-180, 180]");
    if (!(std::isfinite(p.altitude_m) && p.altitude_m >= -1000.0))
        throw DomainError("altitude " + std::to_string(p.altitude_m) + " below -1000 m");
}

EcefPosition lla_to_ecef(const GeodeticPosition& p, double earth_radius) {
    return unit_vector(p) * (earth_radius + p.altitude_m);
}

GeodeticPosition ecef_to_lla(const EcefPosition& p, double earth_radius) {
    const double r = p.norm();
    if (!(r > 0.0)) throw GeometryError("cannot convert the zero vector to a geodetic position");
    const double horizontal = std::hypot(p.x, p.y);
    GeodeticPosition out;
    out.latitude_deg = rad2deg(std::atan2(p.z, horizontal));
    out.longitude_deg = horizontal > 0.0 ? wrap_longitude(rad2deg(std::atan2(p.y, p.x))) : 0.0;
    out.altitude_m = r - earth_radius;
    return out;
}

double euclidean_distance(const EcefPosition& a, const EcefPosition& b) { return (a - b).norm(); }

double great_circle_distance(const GeodeticPosition& a, const GeodeticPosition& b,
                             double earth_radius) {
    return earth_radius * central_angle(unit_vector(a), unit_vector(b));
}

HorizontalVertical horizontal_vertical_split(const GeodeticPosition& evtol,
                                             const GeodeticPosition& antenna,
                                             double earth_radius) {
    return {great_circle_distance(evtol, antenna, earth_radius),
            evtol.altitude_m - antenna.altitude_m};
}

double elevation_angle(const EcefPosition& observer, const EcefPosition& up,
                       const EcefPosition& target) {
    const EcefPosition los = target - observer;
    const double range = los.norm();
    const double up_norm = up.norm();
    if (!(range > 0.0)) throw GeometryError("elevation angle undefined for coincident points");
    if (!(up_norm > 0.0)) throw GeometryError("elevation angle needs a non-zero up direction");
    const EcefPosition cross{los.y * up.z - los.z * up.y, los.z * up.x - los.x * up.z,
                             los.x * up.y - los.y * up.x};
    return rad2deg(std::atan2(los.dot(up), cross.norm()));
}

double elevation_angle(const EcefPosition& observer, const EcefPosition& target) {
    return elevation_angle(observer, observer, target);
}

GeodeticPosition great_circle_point(const GeodeticPosition& origin, const GeodeticPosition& dest,
                                    double fraction) {
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw DomainError("route fraction " + std::to_string(fraction) + " outside [0, 1]");
    const EcefPosition u = unit_vector(origin);
    const EcefPosition v = unit_vector(dest);
    const double omega = central_angle(u, v);
    if (kPi - omega < 1e-9) throw GeometryError("great-circle route between antipodal points is ambiguous");

    if (fraction == 0.0) return {origin.latitude_deg, origin.longitude_deg, 0.0};
    if (fraction == 1.0) return {dest.latitude_deg, dest.longitude_deg, 0.0};
    if (omega == 0.0) return {origin.latitude_deg, origin.longitude_deg, 0.0};

    const double so = std::sin(omega);
    const double wa = std::sin((1.0 - fraction) * omega) / so;
    const double wb = std::sin(fraction * omega) / so;
    GeodeticPosition p = ecef_to_lla(u * wa + v * wb, 1.0);
    p.altitude_m = 0.0;
    return p;
}

}  // namespace uamlink
