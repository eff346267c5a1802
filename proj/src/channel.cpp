#include "dualsat/channel.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dualsat/rng.hpp"

namespace dualsat {

namespace {

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(field) + ": not finite");
}

void require_positive(double v, const char* field) {
    require_finite(v, field);
    if (v <= 0.0) throw std::invalid_argument(std::string(field) + ": must be > 0");
}

}  // namespace

double LinkBudget::transmit_power_per_beam_w() const {
    return saturated_power_per_beam_w / db_to_lin(output_backoff_db);
}

void LinkBudget::validate() const {
    require_positive(carrier_frequency_hz, "carrier_frequency_hz");
    require_positive(bandwidth_hz, "bandwidth_hz");
    require_positive(boresight_distance_m, "boresight_distance_m");
    require_finite(beam_gain_peak_dbi, "beam_gain_peak_dbi");
    require_finite(secondary_gain_peak_dbi, "secondary_gain_peak_dbi");
    require_finite(ut_antenna_gain_dbi, "ut_antenna_gain_dbi");
    require_positive(clear_sky_temperature_k, "clear_sky_temperature_k");
    require_positive(saturated_power_per_beam_w, "saturated_power_per_beam_w");
    require_finite(output_backoff_db, "output_backoff_db");
    require_finite(total_power_dbw, "total_power_dbw");
}

LinkAudit audit_link_budget(const LinkBudget& b) {
    b.validate();
    LinkAudit a{};
    a.path_loss_db = free_space_loss_db(b.boresight_distance_m, b.carrier_frequency_hz);
    a.noise_dbw = noise_power_dbw(b.clear_sky_temperature_k, b.bandwidth_hz);
    a.per_beam_power_w = b.transmit_power_per_beam_w();
    a.eirp_dbw = lin_to_db(a.per_beam_power_w) + b.beam_gain_peak_dbi;
    a.carrier_dbw = a.eirp_dbw - a.path_loss_db + b.ut_antenna_gain_dbi;
    a.c_over_n_db = a.carrier_dbw - a.noise_dbw;
    return a;
}

BeamLayout build_beam_layout(double coverage_radius_km, int beams, double beam_radius_km,
                             SatelliteId satellite, LatticeAnchor anchor) {
    if (beams <= 0) throw std::invalid_argument("beams_count must be > 0");
    if (!(beam_radius_km > 0.0)) throw std::invalid_argument("beam_radius_3db must be > 0");
    if (!(coverage_radius_km > 0.0)) throw std::invalid_argument("coverage_radius must be > 0");

    const double a = std::sqrt(3.0) * beam_radius_km;
    // basis: a1 = a(1, 0), a2 = a(1/2, sqrt(3)/2)
    Point off{};
    if (anchor == LatticeAnchor::shifted) off = {a / 6.0, a * std::sqrt(3.0) / 6.0};

    // rings needed so that the first `beams` points by distance are all present
    int span = 2;
    while (3 * span * (span + 1) + 1 < 4 * beams) ++span;
    span += 2;

    struct Cand {
        Point p;
        double d;
        double ang;
    };
    std::vector<Cand> cands;
    for (int i = -span; i <= span; ++i) {
        for (int j = -span; j <= span; ++j) {
            Point p{(i + 0.5 * j) * a + off.x, j * std::sqrt(3.0) / 2.0 * a + off.y};
            double ang = std::atan2(p.y, p.x);
            if (ang < 0) ang += 2.0 * kPi;
            cands.push_back({p, std::hypot(p.x, p.y), ang});
        }
    }
    // distances compared after rounding so lattice symmetries tie exactly
    auto key = [a](double d) { return std::llround(d / a * 1e9); };
    std::sort(cands.begin(), cands.end(), [&](const Cand& l, const Cand& r) {
        auto kl = key(l.d), kr = key(r.d);
        if (kl != kr) return kl < kr;
        return std::llround(l.ang * 1e9) < std::llround(r.ang * 1e9);
    });

    BeamLayout out;
    out.beam_radius_km = beam_radius_km;
    out.coverage_radius_km = coverage_radius_km;
    out.satellite = satellite;
    out.centers.reserve(beams);
    for (int k = 0; k < beams; ++k) out.centers.push_back(cands[k].p);
    return out;
}

double coverage_gap_km(const BeamLayout& layout, int samples, std::uint64_t seed) {
    Rng rng(seed);
    const double R = layout.coverage_radius_km;
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        Point p;
        do {
            p = {rng.uniform(-R, R), rng.uniform(-R, R)};
        } while (p.x * p.x + p.y * p.y > R * R);
        double best = 1e300;
        for (const auto& c : layout.centers) best = std::min(best, distance(p, c));
        worst = std::max(worst, best);
    }
    return worst;
}

std::vector<UserTerminal> drop_users(const BeamLayout& layout, int users_per_beam, std::uint64_t seed,
                                     const LinkBudget& budget) {
    if (layout.centers.empty()) throw std::invalid_argument("drop_users: empty layout");
    if (users_per_beam < 1) throw std::invalid_argument("drop_users: users_per_beam must be >= 1");
    Rng rng(seed);
    std::vector<UserTerminal> users;
    users.reserve(layout.centers.size() * users_per_beam);
    for (int b = 0; b < layout.count(); ++b) {
        for (int q = 0; q < users_per_beam; ++q) {
            const double rr = layout.beam_radius_km * std::sqrt(rng.uniform());
            const double th = rng.uniform(0.0, 2.0 * kPi);
            UserTerminal u;
            u.position = {layout.centers[b].x + rr * std::cos(th), layout.centers[b].y + rr * std::sin(th)};
            u.home_beam = b;
            u.rx_gain_dbi = budget.ut_antenna_gain_dbi;
            u.noise_temperature_k = budget.clear_sky_temperature_k;
            users.push_back(u);
        }
    }
    return users;
}

double antenna_gain(double off_axis_rad, double peak_gain_lin, double theta_3db_rad) {
    double t = std::fmod(std::fabs(off_axis_rad), kPi);
    if (t > kPi / 2.0) t = kPi - t;
    const double u = 2.07123 * std::sin(t) / std::sin(theta_3db_rad);
    if (u < 1e-6) return peak_gain_lin;
    const double g = std::cyl_bessel_j(1.0, u) / (2.0 * u) + 36.0 * std::cyl_bessel_j(3.0, u) / (u * u * u);
    return peak_gain_lin * g * g;
}

double free_space_loss_db(double distance_m, double frequency_hz) {
    if (!(distance_m > 0.0) || !(frequency_hz > 0.0))
        throw std::invalid_argument("free_space_loss: distance and frequency must be > 0");
    return 20.0 * std::log10(4.0 * kPi * distance_m * frequency_hz / kSpeedOfLight);
}

double noise_power_dbw(double temperature_k, double bandwidth_hz) {
    if (!(temperature_k > 0.0) || !(bandwidth_hz > 0.0))
        throw std::invalid_argument("noise_power: temperature and bandwidth must be > 0");
    return 10.0 * std::log10(kBoltzmann * temperature_k * bandwidth_hz);
}

DualChannel build_channel(const BeamLayout& layout1, const BeamLayout& layout2,
                          const std::vector<UserTerminal>& users, const LinkBudget& budget,
                          std::uint64_t seed, PhaseModel phases) {
    budget.validate();
    const double d_km = budget.boresight_distance_m / 1e3;
    const double loss = db_to_lin(free_space_loss_db(budget.boresight_distance_m, budget.carrier_frequency_hz));

    for (std::size_t i = 0; i < users.size(); ++i) {
        bool inside = false;
        for (const auto& c : layout1.centers)
            if (distance(users[i].position, c) <= layout1.beam_radius_km * (1.0 + 1e-9)) inside = true;
        if (!inside) throw std::invalid_argument("build_channel: user " + std::to_string(i) + " outside coverage");
    }

    Rng rng(seed);
    const int n = static_cast<int>(users.size());
    auto fill = [&](const BeamLayout& lay, CMatrix& h) {
        const double peak = db_to_lin(lay.satellite == SatelliteId::primary ? budget.beam_gain_peak_dbi
                                                                            : budget.secondary_gain_peak_dbi);
        const double th3 = std::atan(lay.beam_radius_km / d_km);
        h.resize(n, lay.count());
        for (int i = 0; i < n; ++i) {
            const double grx = db_to_lin(users[i].rx_gain_dbi);
            const double common = rng.uniform(0.0, 2.0 * kPi);
            for (int k = 0; k < lay.count(); ++k) {
                const double theta = distance(users[i].position, lay.centers[k]) / d_km;
                const double amp = std::sqrt(antenna_gain(theta, peak, th3) * grx / loss);
                const double ph = phases == PhaseModel::per_satellite ? common : rng.uniform(0.0, 2.0 * kPi);
                h(i, k) = std::polar(amp, ph);
            }
        }
    };
    DualChannel ch;
    fill(layout1, ch.h1);
    fill(layout2, ch.h2);
    ch.noise_power_w = kBoltzmann * budget.clear_sky_temperature_k * budget.bandwidth_hz;
    return ch;
}

}  // namespace dualsat
