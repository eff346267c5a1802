#include "dualsat/architectures.hpp"

#include <numeric>
#include <stdexcept>

namespace dualsat {

const std::vector<Architecture>& all_architectures() {
    static const std::vector<Architecture> all = {Architecture::conventional, Architecture::cooperative,
                                                  Architecture::coordinated, Architecture::cognitive,
                                                  Architecture::cognitive_pc};
    return all;
}

std::string architecture_name(Architecture a) {
    switch (a) {
        case Architecture::conventional: return "conventional";
        case Architecture::cooperative: return "cooperative";
        case Architecture::coordinated: return "coordinated";
        case Architecture::cognitive: return "cognitive";
        case Architecture::cognitive_pc: return "cognitive_pc";
    }
    return "unknown";
}

Architecture parse_architecture(const std::string& name) {
    for (auto a : all_architectures())
        if (architecture_name(a) == name) return a;
    throw std::invalid_argument("unknown architecture '" + name + "'");
}

double ArchitectureResult::sum_rate() const {
    return std::accumulate(per_user_rate.begin(), per_user_rate.end(), 0.0);
}

namespace {

int strongest_feed(const CMatrix& h, Eigen::Index user) {
    Eigen::Index best = 0;
    h.row(user).cwiseAbs2().maxCoeff(&best);
    return static_cast<int>(best);
}

}  // namespace

ArchitectureResult eval_conventional(const DualChannel& ch, double p_tot_w, const ConventionalParams& params) {
    const auto n = ch.h1.rows();
    if (static_cast<Eigen::Index>(params.color1.size()) != ch.h1.cols() ||
        static_cast<Eigen::Index>(params.color2.size()) != ch.h2.cols())
        throw std::invalid_argument("eval_conventional: color map does not match the layout");
    if (params.reuse < 1) throw std::invalid_argument("eval_conventional: reuse must be >= 1");

    ArchitectureResult res;
    res.tag = Architecture::conventional;
    res.per_user_rate.assign(n, 0.0);
    std::vector<char> taken(n, 0);
    const double share = 1.0 / (2.0 * params.reuse);

    const CMatrix* hs[2] = {&ch.h1, &ch.h2};
    const std::vector<int>* colors[2] = {&params.color1, &params.color2};
    for (int s = 0; s < 2; ++s) {
        const CMatrix& h = *hs[s];
        const auto k = h.cols();
        const double pb = p_tot_w / (2.0 * static_cast<double>(k));
        std::vector<int> user_of(k, -1);
        for (Eigen::Index b = 0; b < k; ++b)
            for (Eigen::Index u = 0; u < n; ++u)
                if (!taken[u] && strongest_feed(h, u) == b) {
                    user_of[b] = static_cast<int>(u);
                    taken[u] = 1;
                    break;
                }
        for (Eigen::Index b = 0; b < k; ++b) {
            const int u = user_of[b];
            if (u < 0) continue;
            double interference = 0.0;
            for (Eigen::Index j = 0; j < k; ++j)
                if (j != b && user_of[j] >= 0 && (*colors[s])[j] == (*colors[s])[b])
                    interference += pb * std::norm(h(u, j));
            const double sinr = pb * std::norm(h(u, b)) / (ch.noise_power_w + interference);
            res.per_user_rate[u] = share * std::log2(1.0 + sinr);
            res.served.push_back(u);
            res.consumed_power_w += pb;
        }
    }
    return res;
}

ArchitectureResult eval_coordinated(const DualChannel& ch, double p_tot_w, const SiuaParams& siua, PowerMode mode) {
    const auto n = ch.h1.rows();
    const Allocation alloc = siua_allocate(ch.h1, ch.h2, siua);
    ArchitectureResult res;
    res.tag = Architecture::coordinated;
    res.per_user_rate.assign(n, 0.0);

    const CMatrix* hs[2] = {&ch.h1, &ch.h2};
    const std::vector<int>* sets[2] = {&alloc.sat1, &alloc.sat2};
    CMatrix w[2];
    RVector p[2];
    for (int s = 0; s < 2; ++s) {
        if (sets[s]->empty()) continue;
        const CMatrix hsched = select_rows(*hs[s], *sets[s]);
        w[s] = zf_directions(hsched);
        const double limit = p_tot_w / (2.0 * static_cast<double>(hs[s]->cols()));
        p[s] = allocate_powers(w[s], hsched, limit, ch.noise_power_w, mode);
        res.consumed_power_w += feed_powers(w[s], p[s]).sum();

        const CMatrix gram = hsched * w[s];
        for (Eigen::Index i = 0; i < gram.rows(); ++i)
            for (Eigen::Index j = 0; j < gram.cols(); ++j)
                if (i != j && std::abs(gram(i, j)) > 1e-9 * std::abs(gram(i, i)))
                    throw RankDeficientError("eval_coordinated: zero-forcing residual above tolerance");
    }
    for (int s = 0; s < 2; ++s) {
        const int o = 1 - s;
        for (std::size_t j = 0; j < sets[s]->size(); ++j) {
            const int u = (*sets[s])[j];
            const double sig = p[s](j) * std::norm(hs[s]->row(u).dot(w[s].col(j).conjugate()));
            double interference = 0.0;
            if (!sets[o]->empty()) {
                const Eigen::RowVectorXcd leak = hs[o]->row(u) * w[o];
                interference = (leak.cwiseAbs2().transpose().cwiseProduct(p[o])).sum();
            }
            res.per_user_rate[u] = std::log2(1.0 + sig / (ch.noise_power_w + interference));
            res.served.push_back(u);
        }
    }
    return res;
}

ArchitectureResult eval_cooperative(const DualChannel& ch, double p_tot_w, const BoundOptions& opts) {
    const auto n = ch.h1.rows();
    CMatrix joint(n, ch.h1.cols() + ch.h2.cols());
    joint << ch.h1, ch.h2;
    const double c = sum_capacity_solve(joint, p_tot_w, ch.noise_power_w, opts).capacity;
    ArchitectureResult res;
    res.tag = Architecture::cooperative;
    res.upper_bound = true;
    res.per_user_rate.assign(n, c / static_cast<double>(n));
    res.served.resize(n);
    std::iota(res.served.begin(), res.served.end(), 0);
    res.consumed_power_w = p_tot_w;
    return res;
}

CognitiveSetup make_cognitive_setup(const DualChannel& cog, const std::vector<UserTerminal>& users,
                                    const SlotPattern& primary, const SlotPattern& secondary) {
    const auto n = cog.h1.rows();
    if (static_cast<Eigen::Index>(users.size()) != n) throw std::invalid_argument("cognitive setup: pool mismatch");
    CognitiveSetup s;
    s.primary = primary;
    s.secondary = secondary;
    s.primary_user.assign(cog.h1.cols(), -1);
    s.secondary_user.assign(cog.h2.cols(), -1);
    std::vector<char> taken(n, 0);
    for (Eigen::Index u = 0; u < n; ++u) {
        const int b = users[u].home_beam;
        if (b < 0 || b >= cog.h1.cols()) throw std::invalid_argument("cognitive setup: home beam out of range");
        if (s.primary_user[b] < 0) {
            s.primary_user[b] = static_cast<int>(u);
            taken[u] = 1;
        }
    }
    for (Eigen::Index b = 0; b < cog.h2.cols(); ++b)
        for (Eigen::Index u = 0; u < n; ++u)
            if (!taken[u] && strongest_feed(cog.h2, u) == b) {
                s.secondary_user[b] = static_cast<int>(u);
                taken[u] = 1;
                break;
            }
    return s;
}

ArchitectureResult eval_cognitive(const DualChannel& cog, double p_tot_w, const CognitiveSetup& setup,
                                  const CognitiveParams& params) {
    const auto n = cog.h1.rows();
    const int period = setup.primary.period;
    if (period < 1 || setup.secondary.period != period)
        throw std::invalid_argument("eval_cognitive: pattern periods differ");
    if (static_cast<Eigen::Index>(setup.primary_user.size()) != cog.h1.cols() ||
        static_cast<Eigen::Index>(setup.secondary_user.size()) != cog.h2.cols())
        throw std::invalid_argument("eval_cognitive: pattern/layout mismatch");

    ArchitectureResult res;
    res.tag = params.power_control ? Architecture::cognitive_pc : Architecture::cognitive;
    res.per_user_rate.assign(n, 0.0);
    std::vector<char> served(n, 0);
    const double noise = cog.noise_power_w;

    for (int t = 0; t < period; ++t) {
        std::vector<int> pa, sa;
        for (int b : setup.primary.active_sets[t])
            if (setup.primary_user.at(b) >= 0) pa.push_back(b);
        if (!params.secondary_silent)
            for (int b : setup.secondary.active_sets[t])
                if (setup.secondary_user.at(b) >= 0) sa.push_back(b);

        const double pp = pa.empty() ? 0.0 : p_tot_w / 2.0 / static_cast<double>(pa.size());
        RVector ps = RVector::Constant(static_cast<Eigen::Index>(sa.size()),
                                       sa.empty() ? 0.0 : p_tot_w / 2.0 / static_cast<double>(sa.size()));
        if (params.power_control && !sa.empty() && !pa.empty()) {
            RMatrix g(pa.size(), sa.size());
            for (std::size_t i = 0; i < pa.size(); ++i)
                for (std::size_t m = 0; m < sa.size(); ++m)
                    g(i, m) = std::norm(cog.h2(setup.primary_user[pa[i]], sa[m]));
            ps = secondary_power_control(g, ps, noise, params.i_over_n_cap_db);
        }
        res.consumed_power_w += (pp * static_cast<double>(pa.size()) + ps.sum()) / period;

        for (int b : pa) {
            const int u = setup.primary_user[b];
            double interference = 0.0;
            for (int j : pa)
                if (j != b) interference += pp * std::norm(cog.h1(u, j));
            for (std::size_t m = 0; m < sa.size(); ++m) interference += ps(m) * std::norm(cog.h2(u, sa[m]));
            const double sinr = pp * std::norm(cog.h1(u, b)) / (noise + interference);
            res.per_user_rate[u] += std::log2(1.0 + sinr) / period;
            served[u] = 1;
        }
        for (std::size_t k = 0; k < sa.size(); ++k) {
            const int u = setup.secondary_user[sa[k]];
            double interference = 0.0;
            for (int j : pa) interference += pp * std::norm(cog.h1(u, j));
            for (std::size_t m = 0; m < sa.size(); ++m)
                if (m != k) interference += ps(m) * std::norm(cog.h2(u, sa[m]));
            const double sinr = ps(k) * std::norm(cog.h2(u, sa[k])) / (noise + interference);
            res.per_user_rate[u] += std::log2(1.0 + sinr) / period;
            served[u] = 1;
        }
    }
    for (Eigen::Index u = 0; u < n; ++u)
        if (served[u]) res.served.push_back(static_cast<int>(u));
    return res;
}

}  // namespace dualsat
