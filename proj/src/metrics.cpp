#include "dualsat/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dualsat {

double spectral_efficiency(const std::vector<double>& rates) {
    double s = 0.0;
    for (double r : rates) {
        if (r < 0.0 || std::isnan(r)) throw std::invalid_argument("spectral_efficiency: negative rate");
        s += r;
    }
    return s;
}

double jain_index(const std::vector<double>& rates) {
    if (rates.empty()) throw std::invalid_argument("jain_index: no users");
    double s = 0.0, s2 = 0.0;
    for (double r : rates) {
        if (r < 0.0 || std::isnan(r)) throw std::invalid_argument("jain_index: negative rate");
        s += r;
        s2 += r * r;
    }
    if (!(s2 > 0.0)) throw std::invalid_argument("jain_index: undefined for all-zero rates");
    return s * s / (static_cast<double>(rates.size()) * s2);
}

double power_efficiency(double se, double p_tot_dbw) { return se / std::pow(10.0, p_tot_dbw / 10.0); }

RateCdf::RateCdf(std::vector<double> rates) : sorted_(std::move(rates)) { std::sort(sorted_.begin(), sorted_.end()); }

double RateCdf::at(double x) const {
    if (sorted_.empty()) return 0.0;
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double RateCdf::below(double x) const {
    if (sorted_.empty()) return 0.0;
    const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

MetricsReport summarize_rates(const std::vector<double>& rates, double p_tot_dbw, double unavailable_threshold) {
    MetricsReport m;
    m.se_total = spectral_efficiency(rates);
    m.jain = jain_index(rates);
    m.pe = power_efficiency(m.se_total, p_tot_dbw);
    RateCdf cdf(rates);
    m.unavailable = cdf.below(unavailable_threshold);
    m.cdf = cdf.samples();
    return m;
}

}  // namespace dualsat
