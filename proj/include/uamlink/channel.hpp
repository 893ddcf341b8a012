#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "uamlink/geo.hpp"
#include "uamlink/orbit.hpp"

namespace uamlink {

inline constexpr double kSpeedOfLight = 299'792'458.0;

enum class LinkKind { cellular, satellite };
enum class PropagationMode { los, nlos };

/// Cellular path loss uses `path_loss_exponent` inside the coverage envelope and
/// `far_field_exponent` beyond it.
enum class CellZone { inside, beyond };

/// How the LoS probability is obtained for the cellular blend.
enum class LosModel { constant, elevation_sigmoid };

std::string_view to_string(LinkKind kind);

double db_to_linear(double db);
double dbm_per_hz_to_w_per_hz(double dbm_per_hz);

struct CellularParams {
    double carrier_frequency_hz = 850e6;
    double channel_bandwidth_hz = 200e3;
    int fdma_channels = 12;
    double path_loss_exponent = 2.0;
    double far_field_exponent = 4.0;
    double antenna_gain_db = 12.0;
    double tx_power_w = 10.0;
    double noise_psd_dbm_hz = -174.0;
    double los_loss_db = 1.0;
    double nlos_loss_db = 20.0;
    double los_probability = 0.5;
    LosModel los_model = LosModel::constant;
    // Sigmoid alpha(theta) = 1 / (1 + a exp(-b (theta - a))), theta in degrees.
    double sigmoid_a = 9.61;
    double sigmoid_b = 0.16;
    double fresnel_radius_m = 2000.0;
    double fresnel_altitude_m = 400.0;

    double total_bandwidth_hz() const { return channel_bandwidth_hz * fdma_channels; }
    double antenna_gain_linear() const { return db_to_linear(antenna_gain_db); }
    double noise_psd_w_hz() const { return dbm_per_hz_to_w_per_hz(noise_psd_dbm_hz); }
};

struct SatelliteParams {
    double carrier_frequency_hz = 11000e6;
    double channel_bandwidth_hz = 400e3;
    int fdma_channels = 12;
    double path_loss_exponent = 2.0;
    double antenna_gain_db = 20.0;
    double tx_power_w = 8.0;
    double noise_psd_dbm_hz = -174.0;
    double los_loss_db = 0.1;
    double min_elevation_deg = 0.0;

    double total_bandwidth_hz() const { return channel_bandwidth_hz * fdma_channels; }
    double antenna_gain_linear() const { return db_to_linear(antenna_gain_db); }
    double noise_psd_w_hz() const { return dbm_per_hz_to_w_per_hz(noise_psd_dbm_hz); }
};

/// Throw ConfigError with `cellular.*` / `satellite.*` field paths.
void validate(const CellularParams& p);
void validate(const SatelliteParams& p);

struct LinkCandidate {
    LinkKind kind = LinkKind::cellular;
    int node_id = 0;
    double distance_m = 0.0;
    double rate_bps = 0.0;
    int slot = 0;

    bool operator==(const LinkCandidate&) const = default;
};

/// 10 nu log10(4 pi f d / (sqrt(G) c)) + L_mode  [dB]
double cellular_path_loss(double distance_m, PropagationMode mode, const CellularParams& p,
                          CellZone zone = CellZone::inside);

/// alpha * pl_los + (1 - alpha) * pl_nlos, blended in dB.
double effective_cellular_path_loss(double pl_los_db, double pl_nlos_db, double alpha);

/// Free-space loss plus the LoS excess loss [dB].
double leo_path_loss(double distance_m, const SatelliteParams& p);

/// Amplitude gain 10^(-pl/20), so |gain|^2 = 10^(-pl/10).
double gain_from_path_loss(double pl_db);

/// w log2(1 + pt |gain|^2 / (w N0))  [bit/s]; `bandwidth_hz` is the FDMA-widened total.
double shannon_rate(double tx_power_w, double gain, double bandwidth_hz, double noise_psd_w_hz);

/// LoS probability for the blend: the configured constant, or the sigmoid of the
/// elevation of the eVTOL seen from the antenna when that model is selected.
double los_probability(const CellularParams& p, double elevation_deg);

/// Full cellular chain: path losses, blend, gain, rate.
double cellular_rate(double distance_m, const CellularParams& p, double alpha,
                     CellZone zone = CellZone::inside);

/// Full satellite chain: path loss, gain, rate.
double satellite_rate(double distance_m, const SatelliteParams& p);

/// Inside the cylindrical coverage envelope above the antenna (inclusive bounds).
bool cellular_visible(const GeodeticPosition& evtol, const GeodeticPosition& antenna,
                      const CellularParams& p, double earth_radius = kEarthRadius);

/// Elevation of the satellite above the eVTOL's local horizon is at least the mask.
bool satellite_visible(const GeodeticPosition& evtol, const EcefPosition& satellite,
                       const SatelliteParams& p, double earth_radius = kEarthRadius);

struct LinkBudget {
    CellularParams cellular;
    SatelliteParams satellite;
    double earth_radius_m = kEarthRadius;
};

/// One candidate per visible base station (ids 1..n by list position) followed by one per
/// visible satellite, in list order. Invisible nodes are dropped; an empty result is an outage.
std::vector<LinkCandidate> candidate_rates(int slot, const GeodeticPosition& evtol,
                                           std::span<const GeodeticPosition> base_stations,
                                           std::span<const SatelliteState> satellites,
                                           const LinkBudget& budget);

}  // namespace uamlink
