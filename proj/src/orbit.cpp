#include "uamlink/orbit.hpp"

#include <cmath>
#include <set>
#include <string>

#include "uamlink/errors.hpp"

namespace uamlink {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

double normalize_deg(double deg) {
    double d = std::fmod(deg, 360.0);
    return d < 0.0 ? d + 360.0 : d;
}

double mean_anomaly_at_epoch(const OrbitalElements& el) {
    const double e = el.eccentricity;
    const double nu = deg2rad(el.true_anomaly_deg);
    const double ecc_anomaly =
        std::atan2(std::sqrt(1.0 - e * e) * std::sin(nu), e + std::cos(nu));
    return ecc_anomaly - e * std::sin(ecc_anomaly);
}

// Perifocal -> inertial rotation R3(-raan) R1(-inc) R3(-argp) applied to (p, q, 0).
EcefPosition perifocal_to_inertial(double p, double q, const OrbitalElements& el) {
    const double cO = std::cos(deg2rad(el.raan_deg)), sO = std::sin(deg2rad(el.raan_deg));
    const double ci = std::cos(deg2rad(el.inclination_deg)), si = std::sin(deg2rad(el.inclination_deg));
    const double cw = std::cos(deg2rad(el.argument_of_periapsis_deg)),
                 sw = std::sin(deg2rad(el.argument_of_periapsis_deg));
    return {
        (cO * cw - sO * sw * ci) * p + (-cO * sw - sO * cw * ci) * q,
        (sO * cw + cO * sw * ci) * p + (-sO * sw + cO * cw * ci) * q,
        (sw * si) * p + (cw * si) * q,
    };
}

}  // namespace

void validate(const OrbitalElements& el) {
    if (!(std::isfinite(el.semi_major_axis_km) && el.semi_major_axis_km > kEarthRadius / 1000.0))
        throw DomainError("semi-major axis " + std::to_string(el.semi_major_axis_km) +
                          " km is not above the Earth's surface");
    if (!(el.eccentricity >= 0.0 && el.eccentricity < 1.0))
        throw OrbitError("eccentricity " + std::to_string(el.eccentricity) +
                         " is unsupported; only closed orbits (0 <= e < 1) propagate");
    if (!(std::isfinite(el.inclination_deg) && std::isfinite(el.raan_deg) &&
          std::isfinite(el.argument_of_periapsis_deg) && std::isfinite(el.true_anomaly_deg) &&
          std::isfinite(el.epoch_s)))
        throw DomainError("orbital angles and epoch must be finite");
}

double orbital_period(const OrbitalElements& el) {
    const double a = el.semi_major_axis_km;
    return kTwoPi * std::sqrt(a * a * a / kEarthMu);
}

double specific_energy(const OrbitalElements& el) { return -kEarthMu / (2.0 * el.semi_major_axis_km); }

double solve_kepler(double mean_anomaly, double eccentricity) {
    const double e = eccentricity;
    if (!(e >= 0.0 && e < 1.0))
        throw OrbitError("Kepler solver needs 0 <= e < 1, got " + std::to_string(e));
    if (!std::isfinite(mean_anomaly)) throw DomainError("mean anomaly must be finite");

    // Reduce to [-pi, pi]; f(E) = E - e sin E - M is increasing with root in [M - e, M + e].
    double revolutions = 0.0;
    double m = mean_anomaly;
    if (std::abs(m) > kPi) {
        revolutions = std::round(m / kTwoPi);
        m = std::remainder(m, kTwoPi);
    }

    double lo = m - e, hi = m + e;
    double ecc = m;
    for (int iter = 0; iter < 100; ++iter) {
        const double f = ecc - e * std::sin(ecc) - m;
        if (std::abs(f) < 1e-15) break;
        if (f > 0.0) hi = ecc; else lo = ecc;
        const double fp = 1.0 - e * std::cos(ecc);
        double next = ecc - f / fp;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == ecc) break;
        ecc = next;
    }
    return ecc + revolutions * kTwoPi;
}

InertialState inertial_state(const OrbitalElements& el, double t_s) {
    const double a = el.semi_major_axis_km;
    const double e = el.eccentricity;
    const double mean_motion = kTwoPi / orbital_period(el);
    const double m = mean_anomaly_at_epoch(el) + mean_motion * (t_s - el.epoch_s);
    const double ecc = solve_kepler(m, e);

    const double cE = std::cos(ecc), sE = std::sin(ecc);
    const double root = std::sqrt(1.0 - e * e);
    const double radius = a * (1.0 - e * cE);
    const double speed_scale = std::sqrt(kEarthMu * a) / radius;

    InertialState s;
    s.position = perifocal_to_inertial(a * (cE - e), a * root * sE, el) * 1000.0;
    s.velocity = perifocal_to_inertial(-speed_scale * sE, speed_scale * root * cE, el) * 1000.0;
    return s;
}

EcefPosition inertial_to_ecef(const EcefPosition& v, double t_s) {
    const double theta = kEarthRotationRate * t_s;
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * v.x + s * v.y, -s * v.x + c * v.y, v.z};
}

EcefPosition propagate(const OrbitalElements& el, double t_s, double earth_radius) {
    if (!(t_s >= 0.0)) throw DomainError("propagation time must be >= 0, got " + std::to_string(t_s));
    validate(el);
    const EcefPosition inertial = inertial_state(el, t_s).position;
    if (inertial.norm() < earth_radius)
        throw OrbitError("orbit decayed: radius " + std::to_string(inertial.norm()) +
                         " m is below the Earth's surface at t=" + std::to_string(t_s) + " s");
    return inertial_to_ecef(inertial, t_s);
}

Constellation Constellation::prefix(std::size_t n) const {
    Constellation out;
    const std::size_t k = n < satellites.size() ? n : satellites.size();
    out.satellites.assign(satellites.begin(), satellites.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
}

void validate(const Constellation& c, bool allow_empty) {
    if (c.empty() && !allow_empty) throw ConfigError("constellation", "needs at least one satellite");
    std::set<int> ids;
    for (const auto& sat : c.satellites) {
        if (!ids.insert(sat.id).second)
            throw ConfigError("constellation", "duplicate satellite id " + std::to_string(sat.id));
        try {
            validate(sat.elements);
        } catch (const std::exception& ex) {
            throw ConfigError("constellation", "satellite " + std::to_string(sat.id) + ": " + ex.what());
        }
    }
}

std::vector<SatelliteState> constellation_states(const Constellation& c, double t_s,
                                                 double earth_radius) {
    std::vector<SatelliteState> out;
    out.reserve(c.size());
    for (const auto& sat : c.satellites) {
        SatelliteState st;
        st.satellite_id = sat.id;
        st.time_s = t_s;
        try {
            st.ecef = propagate(sat.elements, t_s, earth_radius);
        } catch (const OrbitError& ex) {
            throw OrbitError("satellite " + std::to_string(sat.id) + ": " + ex.what());
        } catch (const DomainError& ex) {
            throw DomainError("satellite " + std::to_string(sat.id) + ": " + ex.what());
        }
        st.position = ecef_to_lla(st.ecef, earth_radius);
        out.push_back(st);
    }
    return out;
}

Constellation generate_walker_constellation(const OrbitalElements& base, int m, int planes) {
    if (m < 1) throw ConfigError("constellation.satellites", "must be >= 1");
    if (planes < 1) throw ConfigError("constellation.planes", "must be >= 1");
    if (m % planes != 0)
        throw ConfigError("constellation.planes",
                          std::to_string(planes) + " planes do not divide " + std::to_string(m) +
                              " satellites");
    const int per_plane = m / planes;
    Constellation c;
    c.satellites.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const int plane = k % planes;
        const int slot = k / planes;
        Satellite sat{k + 1, base};
        if (m > 1) {
            sat.elements.raan_deg = normalize_deg(base.raan_deg + 360.0 * plane / planes);
            sat.elements.true_anomaly_deg =
                normalize_deg(base.true_anomaly_deg + 360.0 * slot / per_plane);
        }
        c.satellites.push_back(sat);
    }
    return c;
}

}  // namespace uamlink
