#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace dualsat {

inline constexpr double kBoltzmann = 1.380649e-23;
inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kPi = 3.14159265358979323846;

using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin_to_db(double lin) { return 10.0 * std::log10(lin); }

struct LinkBudget {
    double carrier_frequency_hz = 20e9;
    double bandwidth_hz = 500e6;
    double boresight_distance_m = 37569e3;
    double beam_gain_peak_dbi = 54.0;
    double secondary_gain_peak_dbi = 54.0;
    double ut_antenna_gain_dbi = 41.0;
    double clear_sky_temperature_k = 235.34;
    double saturated_power_per_beam_w = 55.0;
    double output_backoff_db = 5.0;
    double total_power_dbw = 29.0;

    double transmit_power_per_beam_w() const;
    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct LinkAudit {
    double path_loss_db;
    double noise_dbw;
    double per_beam_power_w;
    double eirp_dbw;
    double carrier_dbw;
    double c_over_n_db;
};

LinkAudit audit_link_budget(const LinkBudget& budget);

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

enum class SatelliteId { primary, secondary };

// centered: a lattice point sits at the origin.
// shifted: the lattice is offset by one third of a basis vector, so no point
// coincides with a centered lattice of twice the radius.
enum class LatticeAnchor { centered, shifted };

struct BeamLayout {
    std::vector<Point> centers;
    double beam_radius_km = 0.0;
    double coverage_radius_km = 0.0;
    SatelliteId satellite = SatelliteId::primary;

    int count() const { return static_cast<int>(centers.size()); }
};

// Hexagonal lattice with neighbour spacing sqrt(3)*r, so adjacent 3-dB
// contours just overlap. Points are taken in order of (distance, angle) from
// the origin; for K = 1, 7, 19, ... with a centered anchor this is the usual
// hexagonal flower.
BeamLayout build_beam_layout(double coverage_radius_km, int beams, double beam_radius_km,
                             SatelliteId satellite, LatticeAnchor anchor = LatticeAnchor::centered);

// Largest distance from any sampled point of the coverage disc to its nearest
// beam center.
double coverage_gap_km(const BeamLayout& layout, int samples, std::uint64_t seed);

struct UserTerminal {
    Point position;
    int home_beam = 0;
    double rx_gain_dbi = 0.0;
    double noise_temperature_k = 0.0;
};

std::vector<UserTerminal> drop_users(const BeamLayout& layout, int users_per_beam, std::uint64_t seed,
                                     const LinkBudget& budget = {});

// Tapered-aperture pattern. Returns linear gain.
double antenna_gain(double off_axis_rad, double peak_gain_lin, double theta_3db_rad);

double free_space_loss_db(double distance_m, double frequency_hz);
double noise_power_dbw(double temperature_k, double bandwidth_hz);

struct DualChannel {
    CMatrix h1;  // users x K1
    CMatrix h2;  // users x K2
    double noise_power_w = 0.0;
};

enum class PhaseModel { per_satellite, per_coefficient };

DualChannel build_channel(const BeamLayout& layout1, const BeamLayout& layout2,
                          const std::vector<UserTerminal>& users, const LinkBudget& budget,
                          std::uint64_t seed, PhaseModel phases = PhaseModel::per_satellite);

}  // namespace dualsat
