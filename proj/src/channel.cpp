#include "uamlink/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uamlink/errors.hpp"

namespace uamlink {

namespace {

// Far-field formulas are meaningless at zero range; an antenna co-located with the
// eVTOL is evaluated at this floor.
constexpr double kMinLinkDistance = 1.0;

double free_space_term(double exponent, double frequency_hz, double distance_m, double gain_linear) {
    return 10.0 * exponent *
           std::log10(4.0 * kPi * frequency_hz * distance_m / (std::sqrt(gain_linear) * kSpeedOfLight));
}

void require_positive(double v, const char* field) {
    if (!(v > 0.0 && std::isfinite(v))) throw ConfigError(field, "must be a positive finite number");
}

}  // namespace

std::string_view to_string(LinkKind kind) {
    return kind == LinkKind::cellular ? "cellular" : "satellite";
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double dbm_per_hz_to_w_per_hz(double dbm_per_hz) { return std::pow(10.0, (dbm_per_hz - 30.0) / 10.0); }

void validate(const CellularParams& p) {
    require_positive(p.carrier_frequency_hz, "cellular.carrier_frequency_hz");
    require_positive(p.channel_bandwidth_hz, "cellular.channel_bandwidth_hz");
    if (p.fdma_channels < 1) throw ConfigError("cellular.fdma_channels", "must be >= 1");
    require_positive(p.path_loss_exponent, "cellular.path_loss_exponent");
    require_positive(p.far_field_exponent, "cellular.far_field_exponent");
    require_positive(p.antenna_gain_linear(), "cellular.antenna_gain_db");
    require_positive(p.tx_power_w, "cellular.tx_power_w");
    require_positive(p.noise_psd_w_hz(), "cellular.noise_psd_dbm_hz");
    require_positive(p.los_loss_db, "cellular.los_loss_db");
    require_positive(p.nlos_loss_db, "cellular.nlos_loss_db");
    if (!(p.los_probability >= 0.0 && p.los_probability <= 1.0))
        throw ConfigError("cellular.los_probability", "must lie in [0, 1]");
    require_positive(p.sigmoid_a, "cellular.sigmoid_a");
    require_positive(p.sigmoid_b, "cellular.sigmoid_b");
    require_positive(p.fresnel_radius_m, "cellular.fresnel_radius_m");
    require_positive(p.fresnel_altitude_m, "cellular.fresnel_altitude_m");
}

void validate(const SatelliteParams& p) {
    require_positive(p.carrier_frequency_hz, "satellite.carrier_frequency_hz");
    require_positive(p.channel_bandwidth_hz, "satellite.channel_bandwidth_hz");
    if (p.fdma_channels < 1) throw ConfigError("satellite.fdma_channels", "must be >= 1");
    require_positive(p.path_loss_exponent, "satellite.path_loss_exponent");
    require_positive(p.antenna_gain_linear(), "satellite.antenna_gain_db");
    require_positive(p.tx_power_w, "satellite.tx_power_w");
    require_positive(p.noise_psd_w_hz(), "satellite.noise_psd_dbm_hz");
    require_positive(p.los_loss_db, "satellite.los_loss_db");
    if (!(p.min_elevation_deg >= 0.0 && p.min_elevation_deg < 90.0))
        throw ConfigError("satellite.min_elevation_deg", "must lie in [0, 90)");
}

double cellular_path_loss(double distance_m, PropagationMode mode, const CellularParams& p,
                          CellZone zone) {
    if (!(distance_m > 0.0)) throw DomainError("cellular path loss needs distance > 0");
    const double exponent = zone == CellZone::inside ? p.path_loss_exponent : p.far_field_exponent;
    const double excess = mode == PropagationMode::los ? p.los_loss_db : p.nlos_loss_db;
    return free_space_term(exponent, p.carrier_frequency_hz, distance_m, p.antenna_gain_linear()) + excess;
}

double effective_cellular_path_loss(double pl_los_db, double pl_nlos_db, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainError("LoS probability " + std::to_string(alpha) + " outside [0, 1]");
    return alpha * pl_los_db + (1.0 - alpha) * pl_nlos_db;
}

double leo_path_loss(double distance_m, const SatelliteParams& p) {
    if (!(distance_m > 0.0)) throw DomainError("satellite path loss needs distance > 0");
    return free_space_term(p.path_loss_exponent, p.carrier_frequency_hz, distance_m,
                           p.antenna_gain_linear()) +
           p.los_loss_db;
}

double gain_from_path_loss(double pl_db) { return std::pow(10.0, -pl_db / 20.0); }

double shannon_rate(double tx_power_w, double gain, double bandwidth_hz, double noise_psd_w_hz) {
    if (!(bandwidth_hz > 0.0)) throw DomainError("bandwidth must be > 0");
    if (!(noise_psd_w_hz > 0.0)) throw DomainError("noise power spectral density must be > 0");
    if (!(gain >= 0.0)) throw DomainError("gain must be >= 0");
    const double snr = tx_power_w * gain * gain / (bandwidth_hz * noise_psd_w_hz);
    return bandwidth_hz * std::log2(1.0 + snr);
}

double los_probability(const CellularParams& p, double elevation_deg) {
    if (p.los_model == LosModel::constant) return p.los_probability;
    return 1.0 / (1.0 + p.sigmoid_a * std::exp(-p.sigmoid_b * (elevation_deg - p.sigmoid_a)));
}

double cellular_rate(double distance_m, const CellularParams& p, double alpha, CellZone zone) {
    const double pl = effective_cellular_path_loss(
        cellular_path_loss(distance_m, PropagationMode::los, p, zone),
        cellular_path_loss(distance_m, PropagationMode::nlos, p, zone), alpha);
    return shannon_rate(p.tx_power_w, gain_from_path_loss(pl), p.total_bandwidth_hz(), p.noise_psd_w_hz());
}

double satellite_rate(double distance_m, const SatelliteParams& p) {
    return shannon_rate(p.tx_power_w, gain_from_path_loss(leo_path_loss(distance_m, p)),
                        p.total_bandwidth_hz(), p.noise_psd_w_hz());
}

bool cellular_visible(const GeodeticPosition& evtol, const GeodeticPosition& antenna,
                      const CellularParams& p, double earth_radius) {
    const auto split = horizontal_vertical_split(evtol, antenna, earth_radius);
    return split.horizontal_m <= p.fresnel_radius_m && split.vertical_m >= 0.0 &&
           split.vertical_m <= p.fresnel_altitude_m;
}

bool satellite_visible(const GeodeticPosition& evtol, const EcefPosition& satellite,
                       const SatelliteParams& p, double earth_radius) {
    const EcefPosition observer = lla_to_ecef(evtol, earth_radius);
    return elevation_angle(observer, satellite) >= p.min_elevation_deg;
}

std::vector<LinkCandidate> candidate_rates(int slot, const GeodeticPosition& evtol,
                                           std::span<const GeodeticPosition> base_stations,
                                           std::span<const SatelliteState> satellites,
                                           const LinkBudget& budget) {
    std::vector<LinkCandidate> out;
    const EcefPosition observer = lla_to_ecef(evtol, budget.earth_radius_m);

    for (std::size_t i = 0; i < base_stations.size(); ++i) {
        const GeodeticPosition& bs = base_stations[i];
        const auto split = horizontal_vertical_split(evtol, bs, budget.earth_radius_m);
        if (!(split.horizontal_m <= budget.cellular.fresnel_radius_m && split.vertical_m >= 0.0 &&
              split.vertical_m <= budget.cellular.fresnel_altitude_m))
            continue;
        const double d = std::max(
            euclidean_distance(observer, lla_to_ecef(bs, budget.earth_radius_m)), kMinLinkDistance);
        const double elevation = rad2deg(std::atan2(split.vertical_m, split.horizontal_m));
        const double alpha = los_probability(budget.cellular, elevation);
        out.push_back({LinkKind::cellular, static_cast<int>(i) + 1, d,
                       cellular_rate(d, budget.cellular, alpha), slot});
    }

    for (const SatelliteState& sat : satellites) {
        if (elevation_angle(observer, sat.ecef) < budget.satellite.min_elevation_deg) continue;
        const double d = euclidean_distance(observer, sat.ecef);
        out.push_back({LinkKind::satellite, sat.satellite_id, d, satellite_rate(d, budget.satellite), slot});
    }
    return out;
}

}  // namespace uamlink
