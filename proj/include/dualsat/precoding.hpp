#pragma once

#include <stdexcept>
#include <string>

#include "dualsat/channel.hpp"

namespace dualsat {

struct RankDeficientError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double residual_, int iterations_)
        : std::runtime_error(what), residual(residual_), iterations(iterations_) {}
    double residual;
    int iterations;
};

// Smallest singular value below this fraction of the largest rejects the set.
inline constexpr double kRankTolerance = 1e-10;

// Unit-norm columns of the right pseudoinverse of h_sched (n x K, n <= K).
CMatrix zf_directions(const CMatrix& h_sched);

enum class PowerMode { uniform, gradient };

// Per-user powers for ZF directions w under a per-feed limit. The uniform rule
// gives every user p = limit / max_k sum_j |W_kj|^2. The gradient rule starts
// there and climbs the interference-free sum rate while staying feasible.
RVector allocate_powers(const CMatrix& w, const CMatrix& h_sched, double per_antenna_limit_w, double noise_w,
                        PowerMode mode = PowerMode::uniform);

// Feed loads sum_j p_j |W_kj|^2.
RVector feed_powers(const CMatrix& w, const RVector& powers);

// Sum rate of a ZF transmission without external interference.
double zf_sum_rate(const CMatrix& h_sched, const CMatrix& w, const RVector& powers, double noise_w);

struct BoundOptions {
    int max_iterations = 500;
    double tolerance = 1e-8;
};

struct BoundResult {
    double capacity = 0.0;  // bits/s/Hz
    int iterations = 0;
    RVector dual_powers;
};

// Broadcast sum capacity under a sum-power constraint, by iterative
// waterfilling on the dual multiple-access channel with 1/n averaging.
BoundResult sum_capacity_solve(const CMatrix& h_joint, double total_power_w, double noise_w,
                               const BoundOptions& opts = {});

inline double sum_capacity_bound(const CMatrix& h_joint, double total_power_w, double noise_w) {
    return sum_capacity_solve(h_joint, total_power_w, noise_w).capacity;
}

}  // namespace dualsat
