#include "dualsat/scheduling.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "dualsat/precoding.hpp"

namespace dualsat {

CMatrix select_rows(const CMatrix& h, const std::vector<int>& rows) {
    CMatrix out(static_cast<Eigen::Index>(rows.size()), h.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = h.row(rows[i]);
    return out;
}

namespace {

// Orthonormal basis of the span of the selected channel vectors (as columns
// h^H), grown one vector at a time.
class Span {
public:
    explicit Span(Eigen::Index dim) : basis_(dim, 0) {}

    struct Split {
        double norm2;
        double orth2;
        double corr;
    };

    Split split(const Eigen::VectorXcd& v) const {
        const double n2 = v.squaredNorm();
        if (basis_.cols() == 0) return {n2, n2, 0.0};
        Eigen::VectorXcd r = v - basis_ * (basis_.adjoint() * v);
        r -= basis_ * (basis_.adjoint() * r);
        const double o2 = r.squaredNorm();
        const double p2 = std::max(n2 - o2, 0.0);
        return {n2, o2, n2 > 0.0 ? std::sqrt(p2 / n2) : 1.0};
    }

    void add(const Eigen::VectorXcd& v) {
        Eigen::VectorXcd r = v;
        for (int pass = 0; pass < 2; ++pass)
            if (basis_.cols() > 0) r -= basis_ * (basis_.adjoint() * r);
        basis_.conservativeResize(Eigen::NoChange, basis_.cols() + 1);
        basis_.col(basis_.cols() - 1) = r / r.norm();
    }

private:
    CMatrix basis_;
};

bool admissible(const Span::Split& s, double alpha) {
    if (!(s.norm2 > 0.0)) return false;
    if (s.orth2 <= kRankTolerance * kRankTolerance * s.norm2) return false;
    return s.corr <= alpha;
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

}  // namespace

std::vector<int> sus_select(const CMatrix& h_pool, double alpha, int max_users) {
    check_alpha(alpha);
    const auto n = h_pool.rows();
    if (n < 1) throw std::invalid_argument("sus_select: empty pool");
    const int limit = std::min<int>(max_users, static_cast<int>(h_pool.cols()));
    Span span(h_pool.cols());
    std::vector<int> chosen;
    std::vector<char> used(n, 0);
    while (static_cast<int>(chosen.size()) < limit) {
        int best = -1;
        double best_orth = -1.0;
        for (Eigen::Index u = 0; u < n; ++u) {
            if (used[u]) continue;
            const auto s = span.split(h_pool.row(u).adjoint());
            if (!admissible(s, alpha)) continue;
            if (s.orth2 > best_orth) {
                best_orth = s.orth2;
                best = static_cast<int>(u);
            }
        }
        if (best < 0) break;
        used[best] = 1;
        chosen.push_back(best);
        span.add(h_pool.row(best).adjoint());
    }
    return chosen;
}

std::vector<std::vector<char>> semi_orthogonality_graph(const CMatrix& h_pool, double alpha) {
    check_alpha(alpha);
    const auto n = h_pool.rows();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double ni = h_pool.row(i).norm();
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double nj = h_pool.row(j).norm();
            if (!(ni > 0.0 && nj > 0.0)) continue;
            const double c = std::abs(h_pool.row(i).dot(h_pool.row(j))) / (ni * nj);
            adj[i][j] = adj[j][i] = c <= alpha;
        }
    }
    return adj;
}

namespace {

struct Candidate {
    int user;
    double score;
};

struct SatState {
    const CMatrix* h;
    std::vector<int> set;
    Span span;
    int cap;
    bool done = false;
};

std::optional<Candidate> best_candidate(const SatState& me, const SatState& other, const std::vector<char>& used,
                                        double alpha, double lambda) {
    const auto n = me.h->rows();
    CMatrix w_other;
    CMatrix h_me_on_other;
    if (!other.set.empty()) {
        w_other = zf_directions(select_rows(*other.h, other.set));
        h_me_on_other = select_rows(*me.h, other.set);
    }
    std::optional<Candidate> best;
    for (Eigen::Index u = 0; u < n; ++u) {
        if (used[u]) continue;
        const auto s = me.span.split(me.h->row(u).adjoint());
        if (!admissible(s, alpha)) continue;
        double rx = 0.0;
        double tx = 0.0;
        if (!other.set.empty() && lambda > 0.0) {
            rx = (other.h->row(u) * w_other).cwiseAbs2().sum();
            std::vector<int> trial = me.set;
            trial.push_back(static_cast<int>(u));
            CMatrix w_trial;
            try {
                w_trial = zf_directions(select_rows(*me.h, trial));
            } catch (const RankDeficientError&) {
                continue;
            }
            tx = (h_me_on_other * w_trial.col(w_trial.cols() - 1)).cwiseAbs2().sum();
        }
        const double score = s.orth2 - lambda * (rx + tx);
        if (lambda > 0.0 && !(score > 0.0)) continue;
        if (!best || score > best->score) best = Candidate{static_cast<int>(u), score};
    }
    return best;
}

}  // namespace

Allocation siua_allocate(const CMatrix& h1, const CMatrix& h2, const SiuaParams& params) {
    check_alpha(params.alpha);
    if (!(params.lambda >= 0.0)) throw std::invalid_argument("siua_allocate: lambda must be >= 0");
    if (h1.rows() != h2.rows()) throw std::invalid_argument("siua_allocate: pool size mismatch");
    if (h1.rows() < 1) throw std::invalid_argument("siua_allocate: empty pool");
    if (params.k1 <= 0 && params.k2 <= 0) throw std::invalid_argument("siua_allocate: both satellites have K = 0");

    SatState sat[2] = {{&h1, {}, Span(h1.cols()), std::min<int>(params.k1, h1.cols())},
                       {&h2, {}, Span(h2.cols()), std::min<int>(params.k2, h2.cols())}};
    std::vector<char> used(h1.rows(), 0);

    auto take = [&](int s, const Candidate& c) {
        sat[s].set.push_back(c.user);
        sat[s].span.add(sat[s].h->row(c.user).adjoint());
        used[c.user] = 1;
    };

    for (auto& st : sat)
        if (st.cap <= 0) st.done = true;

    std::optional<Candidate> first[2];
    for (int s = 0; s < 2; ++s)
        if (!sat[s].done) first[s] = best_candidate(sat[s], sat[1 - s], used, params.alpha, params.lambda);
    if (!first[0] && !first[1]) return {};
    int turn = 0;
    if (!first[0] || (first[1] && first[1]->score > first[0]->score)) turn = 1;

    while (!(sat[0].done && sat[1].done)) {
        SatState& me = sat[turn];
        if (!me.done) {
            auto c = best_candidate(me, sat[1 - turn], used, params.alpha, params.lambda);
            if (c) take(turn, *c);
            else me.done = true;
            if (static_cast<int>(me.set.size()) >= me.cap) me.done = true;
        }
        turn = 1 - turn;
    }
    return {sat[0].set, sat[1].set};
}

double inter_satellite_interference(const CMatrix& h1, const CMatrix& h2, const Allocation& alloc) {
    if (alloc.sat1.empty() || alloc.sat2.empty()) return 0.0;
    const CMatrix w1 = zf_directions(select_rows(h1, alloc.sat1));
    const CMatrix w2 = zf_directions(select_rows(h2, alloc.sat2));
    return (select_rows(h2, alloc.sat1) * w2).cwiseAbs2().sum() + (select_rows(h1, alloc.sat2) * w1).cwiseAbs2().sum();
}

}  // namespace dualsat
