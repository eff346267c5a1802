#include "dualsat/precoding.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace dualsat {

CMatrix zf_directions(const CMatrix& h_sched) {
    const auto n = h_sched.rows();
    const auto k = h_sched.cols();
    if (n == 0) return CMatrix(k, 0);
    if (n > k) throw RankDeficientError("zf_directions: more users than feeds");
    Eigen::JacobiSVD<CMatrix> svd(h_sched, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    if (!(s(0) > 0.0) || s(n - 1) < kRankTolerance * s(0))
        throw RankDeficientError("zf_directions: scheduled channel is rank deficient");
    CMatrix w = svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
    for (Eigen::Index j = 0; j < n; ++j) w.col(j) /= w.col(j).norm();
    return w;
}

RVector feed_powers(const CMatrix& w, const RVector& powers) {
    return w.cwiseAbs2() * powers;
}

double zf_sum_rate(const CMatrix& h_sched, const CMatrix& w, const RVector& powers, double noise_w) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < h_sched.rows(); ++j) {
        const double g = std::norm(h_sched.row(j).dot(w.col(j).conjugate()));
        total += std::log2(1.0 + powers(j) * g / noise_w);
    }
    return total;
}

namespace {

double uniform_power(const CMatrix& w, double limit) {
    const double load = w.cwiseAbs2().rowwise().sum().maxCoeff();
    return limit / load;
}

RVector gradient_powers(const CMatrix& w, const CMatrix& h, double limit, double noise, RVector p) {
    const auto n = p.size();
    RVector g(n);
    for (Eigen::Index j = 0; j < n; ++j) g(j) = std::norm(h.row(j).dot(w.col(j).conjugate())) / noise;
    const RMatrix a = w.cwiseAbs2();
    auto objective = [&](const RVector& q) {
        double f = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) f += std::log2(1.0 + q(j) * g(j));
        return f;
    };
    auto make_feasible = [&](RVector q) {
        q = q.cwiseMax(0.0);
        const double worst = (a * q).maxCoeff();
        if (worst > limit) q *= limit / worst;
        return q;
    };
    double f = objective(p);
    double step = p.maxCoeff();
    for (int it = 0; it < 200 && step > 1e-12 * p.maxCoeff(); ++it) {
        RVector grad(n);
        for (Eigen::Index j = 0; j < n; ++j) grad(j) = g(j) / ((1.0 + p(j) * g(j)) * std::log(2.0));
        const double gn = grad.norm();
        if (gn == 0.0) break;
        RVector cand = make_feasible(p + step * grad / gn);
        const double fc = objective(cand);
        if (fc > f) {
            p = cand;
            f = fc;
            step *= 1.5;
        } else {
            step *= 0.5;
        }
    }
    return p;
}

}  // namespace

RVector allocate_powers(const CMatrix& w, const CMatrix& h_sched, double per_antenna_limit_w, double noise_w,
                        PowerMode mode) {
    if (!(per_antenna_limit_w > 0.0)) throw std::invalid_argument("allocate_powers: limit must be > 0");
    const auto n = w.cols();
    if (n == 0) return RVector(0);
    RVector p = RVector::Constant(n, uniform_power(w, per_antenna_limit_w));
    if (mode == PowerMode::gradient) p = gradient_powers(w, h_sched, per_antenna_limit_w, noise_w, p);
    return p;
}

namespace {

// Levels q_k = (mu - 1/g_k)^+ with sum q = budget.
RVector waterfill(const RVector& gains, double budget) {
    const auto n = gains.size();
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return gains(a) > gains(b); });
    double mu = 0.0;
    double inv_sum = 0.0;
    Eigen::Index active = 0;
    for (Eigen::Index m = 0; m < n; ++m) {
        const double g = gains(order[m]);
        if (!(g > 0.0)) break;
        inv_sum += 1.0 / g;
        const double cand = (budget + inv_sum) / static_cast<double>(m + 1);
        if (cand > 1.0 / g) {
            mu = cand;
            active = m + 1;
        } else {
            break;
        }
    }
    RVector q = RVector::Zero(n);
    for (Eigen::Index m = 0; m < active; ++m) q(order[m]) = std::max(0.0, mu - 1.0 / gains(order[m]));
    return q;
}

double log2det_and_inverse(const CMatrix& z, CMatrix* inv) {
    Eigen::LLT<CMatrix> llt(z);
    const auto& l = llt.matrixLLT();
    double ld = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) ld += 2.0 * std::log(std::real(l(i, i)));
    if (inv) *inv = llt.solve(CMatrix::Identity(z.rows(), z.cols()));
    return ld / std::log(2.0);
}

}  // namespace

BoundResult sum_capacity_solve(const CMatrix& h_joint, double total_power_w, double noise_w,
                               const BoundOptions& opts) {
    const auto n = h_joint.rows();
    const auto m = h_joint.cols();
    if (n < 1) throw std::invalid_argument("sum_capacity_bound: no users");
    if (!(total_power_w > 0.0)) throw std::invalid_argument("sum_capacity_bound: total power must be > 0");
    if (!(noise_w > 0.0)) throw std::invalid_argument("sum_capacity_bound: noise must be > 0");

    const CMatrix hn = h_joint / std::sqrt(noise_w);
    const CMatrix v = hn.adjoint();  // columns are users
    RVector q = RVector::Constant(n, total_power_w / static_cast<double>(n));
    const CMatrix eye = CMatrix::Identity(m, m);

    auto build_z = [&](const RVector& qq) -> CMatrix { return eye + v * qq.asDiagonal() * hn; };

    BoundResult res;
    CMatrix zinv;
    double prev = log2det_and_inverse(build_z(q), &zinv);
    double change = 0.0;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        RVector geff(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            const double g = std::real(v.col(k).dot(zinv * v.col(k)));
            geff(k) = g / std::max(1.0 - q(k) * g, 1e-300);
        }
        const RVector qn = waterfill(geff, total_power_w);
        // Step toward the waterfilling point. The classic 1/n average is the
        // lower end of the bracket; a golden-section search over [1/n, 1]
        // can only improve on it since the objective is concave on the line.
        const RVector dir = qn - q;
        auto f = [&](double t) { return log2det_and_inverse(build_z(q + t * dir), nullptr); };
        double lo = 1.0 / static_cast<double>(n), hi = 1.0;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = f(x1), f2 = f(x2);
        for (int ls = 0; ls < 40 && hi - lo > 1e-6; ++ls) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = f(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = f(x1);
            }
        }
        double t = 0.5 * (lo + hi);
        const double base = f(1.0 / static_cast<double>(n));
        if (f(t) < base) t = 1.0 / static_cast<double>(n);
        q = (q + t * dir).cwiseMax(0.0);
        const double cur = log2det_and_inverse(build_z(q), &zinv);
        change = std::fabs(cur - prev) / std::max(std::fabs(cur), 1e-300);
        prev = cur;
        res.iterations = it;
        if (change <= opts.tolerance) {
            res.capacity = cur;
            res.dual_powers = q;
            return res;
        }
    }
    char msg[128];
    std::snprintf(msg, sizeof msg, "sum_capacity_bound: no convergence after %d iterations, relative change %.3e",
                  opts.max_iterations, change);
    throw ConvergenceError(msg, change, opts.max_iterations);
}

}  // namespace dualsat
