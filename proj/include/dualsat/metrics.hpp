#pragma once

#include <vector>

namespace dualsat {

// Sum of per-user rates. Throws on negative input.
double spectral_efficiency(const std::vector<double>& rates);

// (sum r)^2 / (n * sum r^2). Throws on empty or all-zero input.
double jain_index(const std::vector<double>& rates);

double power_efficiency(double se, double p_tot_dbw);

class RateCdf {
public:
    explicit RateCdf(std::vector<double> rates);

    const std::vector<double>& samples() const { return sorted_; }
    // Fraction of samples <= x.
    double at(double x) const;
    // Fraction of samples strictly below x.
    double below(double x) const;

private:
    std::vector<double> sorted_;
};

inline RateCdf rate_cdf(std::vector<double> rates) { return RateCdf(std::move(rates)); }

struct MetricsReport {
    double se_total = 0.0;
    double jain = 0.0;
    double pe = 0.0;
    double unavailable = 0.0;  // fraction of users below the threshold
    std::vector<double> cdf;
};

MetricsReport summarize_rates(const std::vector<double>& rates, double p_tot_dbw, double unavailable_threshold);

}  // namespace dualsat
