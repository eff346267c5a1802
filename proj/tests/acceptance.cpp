// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: acceptance [path/to/dualsat]
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "dualsat/harness.hpp"
#include "dualsat/metrics.hpp"
#include "dualsat/rng.hpp"

using namespace dualsat;

namespace {

// Pinned tolerances.
constexpr double kZfResidual = 1e-9;
constexpr double kFeedTightness = 1e-9;
constexpr double kCapSlackDb = 1e-9;
constexpr double kBoundSlack = 1e-9;
constexpr double kSaturation = 0.05;
constexpr double kCrossLo = 10.0, kCrossHi = 30.0;
constexpr double kUnavailLo = 0.40, kUnavailHi = 0.80;
constexpr double kPeHigh = 25.0, kPeLow = 5.0;

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail, double seconds = -1.0) {
    std::printf("[%s] %s: %s", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    if (seconds >= 0.0) std::printf(" (%.2f s)", seconds);
    std::printf("\n");
    std::fflush(stdout);
    if (!ok) ++failures;
}

double timed(const std::function<void()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

CMatrix random_complex(int rows, int cols, std::mt19937_64& gen) {
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = {nd(gen), nd(gen)};
    return m;
}

int rand_int(std::mt19937_64& gen, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }

// ---------------------------------------------------------------- link budget

void table1(const char* cli) {
    LinkAudit a{};
    bool ok = true;
    std::string cli_note = "cli not given";
    const double t = timed([&] {
        a = audit_link_budget(LinkBudget{});
        ok = std::fabs(a.path_loss_db - 210.0) <= 0.2 && std::fabs(a.noise_dbw + 118.0) <= 0.2 &&
             std::fabs(a.carrier_dbw + 103.0) <= 0.5 && std::fabs(a.c_over_n_db - 15.0) <= 0.5 &&
             std::fabs(a.per_beam_power_w - 17.38) <= 0.1;
        if (cli) {
            const int rc = std::system((std::string(cli) + " table1 > /dev/null").c_str());
            cli_note = "cli table1 exit " + std::to_string(rc);
            ok = ok && rc == 0;
        }
    });
    std::ostringstream os;
    os.precision(5);
    os << "L=" << a.path_loss_db << " dB, N=" << a.noise_dbw << " dBW, C=" << a.carrier_dbw
       << " dBW, C/N=" << a.c_over_n_db << " dB, P=" << a.per_beam_power_w << " W, " << cli_note;
    report(ok && t < 1.0, "table1 link budget", os.str(), t);
}

// ---------------------------------------------------------------- zf

void zf_invariants() {
    double worst_res = 0.0, worst_tight = 0.0;
    const double t = timed([&] {
        std::mt19937_64 gen(101);
        for (int it = 0; it < 1000; ++it) {
            const int k = rand_int(gen, 1, 10);
            const int n = rand_int(gen, 1, k);
            const CMatrix h = random_complex(n, k, gen);
            const CMatrix w = zf_directions(h);
            const CMatrix hw = h * w;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) worst_res = std::max(worst_res, std::abs(hw(i, j)) / std::abs(hw(i, i)));
            const double lim = 17.38;
            const RVector p = allocate_powers(w, h, lim, 1.0);
            worst_tight = std::max(worst_tight, std::fabs(feed_powers(w, p).maxCoeff() / lim - 1.0));
        }
    });
    report(worst_res <= kZfResidual && worst_tight <= kFeedTightness && t < 10.0, "zf invariants (1e3 sets)",
           "max residual " + fmt("%.2e", worst_res) + ", max binding-feed deviation " + fmt("%.2e", worst_tight), t);
}

// ---------------------------------------------------------------- scheduling

std::vector<int> greedy_oracle(const CMatrix& h, double alpha, int max_users) {
    const int n = static_cast<int>(h.rows()), k = static_cast<int>(h.cols());
    std::vector<int> chosen;
    while (static_cast<int>(chosen.size()) < std::min(max_users, k)) {
        CMatrix proj = CMatrix::Zero(k, k);
        if (!chosen.empty()) {
            const CMatrix hs = select_rows(h, chosen);
            proj = hs.adjoint() * (hs * hs.adjoint()).inverse() * hs;
        }
        int best = -1;
        double best_o = -1.0;
        for (int u = 0; u < n; ++u) {
            if (std::find(chosen.begin(), chosen.end(), u) != chosen.end()) continue;
            const Eigen::VectorXcd v = h.row(u).adjoint();
            const double n2 = v.squaredNorm(), o2 = (v - proj * v).squaredNorm();
            if (!(n2 > 0.0) || o2 <= 1e-20 * n2 || std::sqrt((proj * v).squaredNorm() / n2) > alpha) continue;
            if (o2 > best_o) {
                best_o = o2;
                best = u;
            }
        }
        if (best < 0) break;
        chosen.push_back(best);
    }
    return chosen;
}

void scheduling() {
    int oracle_miss = 0, reduce_miss = 0, invalid = 0;
    const double t = timed([&] {
        std::mt19937_64 gen(202);
        for (int it = 0; it < 500; ++it) {
            const int n = rand_int(gen, 1, 8), k = rand_int(gen, 1, 4);
            const double alpha = std::uniform_real_distribution<double>(0.2, 0.95)(gen);
            const CMatrix h = random_complex(n, k, gen);
            if (sus_select(h, alpha, k) != greedy_oracle(h, alpha, k)) ++oracle_miss;
        }
        for (int it = 0; it < 200; ++it) {
            const int n1 = rand_int(gen, 1, 7), n2 = rand_int(gen, 1, 7);
            const int k1 = rand_int(gen, 1, 4), k2 = rand_int(gen, 1, 4);
            const CMatrix a = random_complex(n1, k1, gen), b = random_complex(n2, k2, gen);
            CMatrix h1 = CMatrix::Zero(n1 + n2, k1), h2 = CMatrix::Zero(n1 + n2, k2);
            h1.topRows(n1) = a;
            h2.bottomRows(n2) = b;
            const auto al = siua_allocate(h1, h2, {0.4, 0.0, k1, k2});
            auto want2 = sus_select(b, 0.4, k2);
            for (int& u : want2) u += n1;
            if (al.sat1 != sus_select(a, 0.4, k1) || al.sat2 != want2) ++reduce_miss;
        }
        for (int it = 0; it < 10000; ++it) {
            const int n = rand_int(gen, 1, 14);
            const int k1 = rand_int(gen, 1, 7), k2 = rand_int(gen, 1, 7);
            const double lambda = std::uniform_real_distribution<double>(0.0, 20.0)(gen);
            const auto al = siua_allocate(random_complex(n, k1, gen), random_complex(n, k2, gen),
                                          {0.8, lambda, k1, k2});
            std::set<int> seen(al.sat1.begin(), al.sat1.end());
            seen.insert(al.sat2.begin(), al.sat2.end());
            if (seen.size() != al.sat1.size() + al.sat2.size() || static_cast<int>(al.sat1.size()) > k1 ||
                static_cast<int>(al.sat2.size()) > k2)
                ++invalid;
        }
    });
    report(oracle_miss == 0 && reduce_miss == 0 && invalid == 0 && t < 30.0, "scheduling oracles",
           std::to_string(oracle_miss) + "/500 oracle mismatches, " + std::to_string(reduce_miss) +
               "/200 lambda=0 reduction mismatches, " + std::to_string(invalid) + "/10000 invalid allocations",
           t);
}

// ---------------------------------------------------------------- beam hopping

void beam_hopping() {
    int bad_partition = 0, bad_adjacent = 0, bad_overlap = 0, bad_idem = 0;
    double worst_in = -1e300;
    const double t = timed([&] {
        const Scenario s;
        const Geometry g = build_geometry(s);
        const auto adj = beam_adjacency(g.sat1);
        std::vector<int> hits(g.sat1.count(), 0);
        for (const auto& set : g.primary_pattern.active_sets)
            for (int b : set) {
                ++hits[b];
                for (int o : set)
                    if (std::find(adj[b].begin(), adj[b].end(), o) != adj[b].end()) ++bad_adjacent;
            }
        for (int h : hits) bad_partition += h != 1;
        const auto parents = assign_parents(g.sat1, g.secondary);
        for (int slot = 0; slot < g.primary_pattern.period; ++slot) {
            const auto& pa = g.primary_pattern.active_sets[slot];
            for (int sb : g.secondary_pattern.active_sets[slot]) {
                if (std::find(pa.begin(), pa.end(), parents[sb]) != pa.end()) ++bad_overlap;
                for (int p : pa)
                    if (!(distance(g.secondary.centers[sb], g.sat1.centers[p]) > g.sat1.beam_radius_km))
                        ++bad_overlap;
            }
        }
        std::mt19937_64 gen(303);
        for (int it = 0; it < 1000; ++it) {
            const Drop d = make_drop(s, g, gen());
            const auto setup = make_cognitive_setup(d.cog, d.users, g.primary_pattern, g.secondary_pattern);
            const double p = db_to_lin(std::uniform_real_distribution<double>(-5.0, 50.0)(gen));
            for (int slot = 0; slot < g.primary_pattern.period; ++slot) {
                std::vector<int> pu, sb;
                for (int b : g.primary_pattern.active_sets[slot])
                    if (setup.primary_user[b] >= 0) pu.push_back(setup.primary_user[b]);
                for (int b : g.secondary_pattern.active_sets[slot])
                    if (setup.secondary_user[b] >= 0) sb.push_back(b);
                if (pu.empty() || sb.empty()) continue;
                RMatrix gain(pu.size(), sb.size());
                for (std::size_t i = 0; i < pu.size(); ++i)
                    for (std::size_t m = 0; m < sb.size(); ++m) gain(i, m) = std::norm(d.cog.h2(pu[i], sb[m]));
                const RVector nominal = RVector::Constant(sb.size(), p / 2.0 / sb.size());
                const RVector once = secondary_power_control(gain, nominal, d.cog.noise_power_w, s.i_over_n_cap_db);
                const RVector twice = secondary_power_control(gain, once, d.cog.noise_power_w, s.i_over_n_cap_db);
                if (twice != once || (once.array() > nominal.array()).any()) ++bad_idem;
                worst_in = std::max(worst_in, lin_to_db((gain * once).maxCoeff() / d.cog.noise_power_w) -
                                                  s.i_over_n_cap_db);
            }
        }
    });
    report(bad_partition == 0 && bad_adjacent == 0 && bad_overlap == 0 && bad_idem == 0 && worst_in <= kCapSlackDb &&
               t < 10.0,
           "beam-hopping properties (1e3 drops)",
           "partition errors " + std::to_string(bad_partition) + ", adjacent pairs " + std::to_string(bad_adjacent) +
               ", concurrent overlaps " + std::to_string(bad_overlap) + ", idempotence errors " +
               std::to_string(bad_idem) + ", worst I/N above cap " + fmt("%.3e dB", worst_in),
           t);
}

// ---------------------------------------------------------------- metrics

void metrics() {
    int bad = 0;
    int bound_viol = 0;
    const double t = timed([&] {
        bad += std::fabs(jain_index({2.0, 2.0, 2.0}) - 1.0) > 1e-12;
        bad += std::fabs(jain_index({0.0, 0.0, 5.0, 0.0}) - 0.25) > 1e-12;
        bad += std::fabs(jain_index({3.0, 1.0}) - 0.8) > 1e-12;
        std::mt19937_64 gen(404);
        std::uniform_real_distribution<double> ud(0.0, 1.0);
        for (int it = 0; it < 10000; ++it) {
            const int n = rand_int(gen, 1, 30);
            std::vector<double> r(n);
            for (auto& x : r) x = ud(gen) < 0.3 ? 0.0 : 10.0 * ud(gen);
            r[0] += 1e-3;
            const double j = jain_index(r);
            bad += j < 1.0 / n - 1e-12 || j > 1.0 + 1e-12;
            const double c = std::exp(8.0 * ud(gen) - 4.0);
            for (auto& x : r) x *= c;
            bad += std::fabs(jain_index(r) - j) > 1e-12 * j;
        }
        const Scenario s;
        const Geometry g = build_geometry(s);
        for (int it = 0; it < 1000; ++it) {
            const Drop d = make_drop(s, g, gen());
            const double p = db_to_lin(std::uniform_real_distribution<double>(-5.0, 50.0)(gen));
            SiuaParams sp = s.siua;
            double zf = 0.0;
            try {
                zf = eval_coordinated(d.dual, p, sp).sum_rate();
            } catch (const RankDeficientError&) {
                continue;
            }
            if (eval_cooperative(d.dual, p).sum_rate() < zf * (1.0 - kBoundSlack)) ++bound_viol;
        }
    });
    report(bad == 0 && bound_viol == 0 && t < 30.0, "metrics properties",
           std::to_string(bad) + " Jain property failures, " + std::to_string(bound_viol) +
               "/1000 drops with bound below ZF sum rate",
           t);
}

// ---------------------------------------------------------------- trends

double row_value(const std::vector<SummaryRow>& rows, Architecture a, double p, Field f) {
    return value_at(rows, a, f, p);
}

void trends(const SweepResult& r, double seconds) {
    using A = Architecture;
    const auto rows = aggregate(r);
    const auto& archs = r.scenario.architectures;
    auto idx = [&](A a) { return static_cast<std::size_t>(std::find(archs.begin(), archs.end(), a) - archs.begin()); };

    {
        int per_drop = 0, mean_viol = 0;
        for (const auto& pt : r.points) {
            const auto& coop = pt.per_arch[idx(A::cooperative)].se;
            for (A a : archs) {
                if (a == A::cooperative) continue;
                const auto& se = pt.per_arch[idx(a)].se;
                double sc = 0.0, so = 0.0;
                for (std::size_t d = 0; d < se.size(); ++d) {
                    per_drop += se[d] > coop[d] * (1.0 + kBoundSlack);
                    sc += coop[d];
                    so += se[d];
                }
                mean_viol += so > sc * (1.0 + kBoundSlack);
            }
        }
        report(per_drop == 0 && mean_viol == 0, "trend (a) cooperative dominates",
               std::to_string(per_drop) + " per-drop and " + std::to_string(mean_viol) + " mean violations", seconds);
    }
    {
        const double s40 = row_value(rows, A::conventional, 40.0, Field::se_mean);
        const double s50 = row_value(rows, A::conventional, 50.0, Field::se_mean);
        const double growth = (s50 - s40) / s40;
        report(growth < kSaturation, "trend (b) conventional saturates",
               "SE(40)=" + fmt("%.4f", s40) + ", SE(50)=" + fmt("%.4f", s50) + ", growth " +
                   fmt("%.1f%%", 100.0 * growth) + " (limit 5%)");
    }
    const auto cross = find_crossing(rows, A::coordinated, A::cognitive);
    report(cross && *cross >= kCrossLo && *cross <= kCrossHi, "trend (c) coordinated x cognitive crossing",
           cross ? fmt("%.3f dBW (reference 22.5)", *cross) : std::string("none"));
    const double pc = cross ? *cross : 22.5;
    {
        const double jc = row_value(rows, A::conventional, pc, Field::jain_mean);
        const double jg = row_value(rows, A::cognitive, pc, Field::jain_mean);
        const double jp = row_value(rows, A::cognitive_pc, pc, Field::jain_mean);
        const double jo = row_value(rows, A::coordinated, pc, Field::jain_mean);
        std::ostringstream os;
        os.precision(3);
        os << "at " << pc << " dBW: conventional " << jc << " > cognitive " << jg << " > cognitive_pc " << jp
           << " > coordinated " << jo;
        report(cross && jc > jg && jg > jp && jp > jo, "trend (d) Jain ordering", os.str());
    }
    {
        int high_viol = 0, low_viol = 0;
        std::ostringstream os;
        os.precision(4);
        for (const auto& row : rows) {
            if (row.arch != A::coordinated || row.p_tot_dbw < kPeHigh) continue;
            for (A a : {A::conventional, A::cognitive, A::cognitive_pc})
                high_viol += row_value(rows, a, row.p_tot_dbw, Field::pe_mean) >= row.pe_mean;
        }
        for (const auto& row : rows) {
            if (row.arch != A::cognitive_pc || row.p_tot_dbw > kPeLow) continue;
            double best = 0.0;
            for (A a : {A::conventional, A::cognitive, A::coordinated})
                best = std::max(best, row_value(rows, a, row.p_tot_dbw, Field::pe_mean));
            if (row.pe_mean < best) {
                ++low_viol;
                os << " " << row.p_tot_dbw << " dBW: " << row.pe_mean << " < " << best << ";";
            }
        }
        report(high_viol == 0, "trend (e) coordinated PE best at >= 25 dBW",
               std::to_string(high_viol) + " points where a realizable scheme matches or beats coordinated");
        report(low_viol == 0, "trend (e) cognitive_pc PE best at <= 5 dBW",
               std::to_string(low_viol) + " points below the best realizable PE" + os.str());
    }
    {
        const double u = row_value(rows, A::coordinated, pc, Field::unavailable_frac);
        report(cross && u >= kUnavailLo && u <= kUnavailHi, "trend (f) coordinated unavailable fraction",
               fmt("%.3f at the crossing (band 0.40-0.80)", u));
    }
}

}  // namespace

int main(int argc, char** argv) {
    const char* cli = argc > 1 ? argv[1] : nullptr;
    table1(cli);
    zf_invariants();
    scheduling();
    beam_hopping();
    metrics();

    Scenario s;
    s.threads = 1;
    SweepResult r;
    const double t_run = timed([&] { r = run_sweep(s); });
    trends(r, t_run);
    report(t_run <= 300.0, "trend suite runtime", fmt("%.1f s for the default sweep (limit ~300 s)", t_run));

    std::string a, b;
    const double t_rep = timed([&] {
        a = csv_text(aggregate(r));
        b = csv_text(aggregate(run_sweep(s, 3)));
    });
    report(a == b && a == csv_text(aggregate(run_sweep(s, 1))), "reproducibility",
           "default scenario CSV identical across runs with 1 and 3 threads (sha1 " + git_blob_hash(a) + ")", t_rep);

    std::printf("%d failure(s)\n", failures);
    return failures == 0 ? 0 : 1;
}
