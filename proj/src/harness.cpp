#include "dualsat/harness.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dualsat/metrics.hpp"
#include "dualsat/rng.hpp"

namespace dualsat {

// ---------------------------------------------------------------- config

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || p != end) throw ConfigError(key + ": expected a number, got '" + v + "'");
    return out;
}

long long to_int(const std::string& key, const std::string& v) {
    long long out = 0;
    const auto* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || p != end) throw ConfigError(key + ": expected an integer, got '" + v + "'");
    return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const auto* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || p != end) throw ConfigError(key + ": expected an unsigned integer, got '" + v + "'");
    return out;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_double(v[i]);
    return out;
}

struct Entry {
    const char* key;
    std::function<void(Scenario&, const std::string&)> set;
    std::function<std::string(const Scenario&)> get;
};

#define DS_DOUBLE(KEY, MEMBER)                                                               \
    Entry {                                                                                  \
        KEY, [](Scenario& s, const std::string& v) { s.MEMBER = to_double(KEY, v); },        \
            [](const Scenario& s) { return format_double(s.MEMBER); }                        \
    }
#define DS_INT(KEY, MEMBER)                                                                      \
    Entry {                                                                                      \
        KEY, [](Scenario& s, const std::string& v) { s.MEMBER = static_cast<int>(to_int(KEY, v)); }, \
            [](const Scenario& s) { return std::to_string(s.MEMBER); }                           \
    }

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table = {
        {"scenario.id", [](Scenario& s, const std::string& v) { s.id = v; },
         [](const Scenario& s) { return s.id; }},
        DS_DOUBLE("geometry.coverage_radius_km", coverage_radius_km),
        DS_INT("geometry.k1", k1),
        DS_INT("geometry.k2", k2),
        DS_DOUBLE("geometry.beam_radius_km", beam_radius_km),
        DS_INT("geometry.secondary_beams", secondary_beams),
        DS_DOUBLE("geometry.secondary_radius_km", secondary_radius_km),
        DS_INT("geometry.users_per_beam", users_per_beam),
        DS_DOUBLE("link.carrier_frequency_hz", link.carrier_frequency_hz),
        DS_DOUBLE("link.bandwidth_hz", link.bandwidth_hz),
        DS_DOUBLE("link.distance_m", link.boresight_distance_m),
        DS_DOUBLE("link.beam_gain_dbi", link.beam_gain_peak_dbi),
        DS_DOUBLE("link.secondary_gain_dbi", link.secondary_gain_peak_dbi),
        DS_DOUBLE("link.ut_gain_dbi", link.ut_antenna_gain_dbi),
        DS_DOUBLE("link.temperature_k", link.clear_sky_temperature_k),
        DS_DOUBLE("link.saturated_power_w", link.saturated_power_per_beam_w),
        DS_DOUBLE("link.output_backoff_db", link.output_backoff_db),
        DS_DOUBLE("link.total_power_dbw", link.total_power_dbw),
        {"channel.phases",
         [](Scenario& s, const std::string& v) {
             if (v == "per_satellite") s.phases = PhaseModel::per_satellite;
             else if (v == "per_coefficient") s.phases = PhaseModel::per_coefficient;
             else throw ConfigError("channel.phases: expected per_satellite or per_coefficient, got '" + v + "'");
         },
         [](const Scenario& s) {
             return std::string(s.phases == PhaseModel::per_satellite ? "per_satellite" : "per_coefficient");
         }},
        {"run.architectures",
         [](Scenario& s, const std::string& v) {
             s.architectures.clear();
             for (const auto& name : split_list(v)) {
                 try {
                     s.architectures.push_back(parse_architecture(name));
                 } catch (const std::invalid_argument& e) {
                     throw ConfigError(std::string("run.architectures: ") + e.what());
                 }
             }
         },
         [](const Scenario& s) {
             std::string out;
             for (std::size_t i = 0; i < s.architectures.size(); ++i)
                 out += (i ? "," : "") + architecture_name(s.architectures[i]);
             return out;
         }},
        DS_INT("run.drops", drops),
        {"run.seed", [](Scenario& s, const std::string& v) { s.seed = to_u64("run.seed", v); },
         [](const Scenario& s) { return std::to_string(s.seed); }},
        DS_INT("run.threads", threads),
        DS_DOUBLE("sweep.start_dbw", sweep_start_dbw),
        DS_DOUBLE("sweep.stop_dbw", sweep_stop_dbw),
        DS_DOUBLE("sweep.step_dbw", sweep_step_dbw),
        {"sweep.cdf_dbw",
         [](Scenario& s, const std::string& v) {
             s.cdf_points_dbw.clear();
             for (const auto& x : split_list(v)) s.cdf_points_dbw.push_back(to_double("sweep.cdf_dbw", x));
         },
         [](const Scenario& s) { return join_doubles(s.cdf_points_dbw); }},
        DS_DOUBLE("scheduler.alpha", siua.alpha),
        DS_DOUBLE("scheduler.lambda", siua.lambda),
        {"precoding.power_mode",
         [](Scenario& s, const std::string& v) {
             if (v == "uniform") s.power_mode = PowerMode::uniform;
             else if (v == "gradient") s.power_mode = PowerMode::gradient;
             else throw ConfigError("precoding.power_mode: expected uniform or gradient, got '" + v + "'");
         },
         [](const Scenario& s) { return std::string(s.power_mode == PowerMode::uniform ? "uniform" : "gradient"); }},
        DS_INT("conventional.reuse", conventional_reuse),
        DS_INT("cognitive.slot_reuse", slot_reuse),
        DS_DOUBLE("cognitive.i_over_n_cap_db", i_over_n_cap_db),
        DS_INT("cognitive.secondary_budget", secondary_budget),
        DS_DOUBLE("metrics.unavailable_threshold", unavailable_threshold),
        {"output.dir", [](Scenario& s, const std::string& v) { s.output_dir = v; },
         [](const Scenario& s) { return s.output_dir; }},
    };
    return table;
}

#undef DS_DOUBLE
#undef DS_INT

}  // namespace

std::vector<double> Scenario::powers_dbw() const {
    const int count = static_cast<int>(std::floor((sweep_stop_dbw - sweep_start_dbw) / sweep_step_dbw + 1e-9)) + 1;
    std::vector<double> p(count);
    for (int i = 0; i < count; ++i) p[i] = sweep_start_dbw + i * sweep_step_dbw;
    return p;
}

void Scenario::validate() const {
    auto need = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    need(!id.empty() && id.find_first_of(",\"\n\r") == std::string::npos,
         "scenario.id: must be non-empty without commas or quotes");
    need(coverage_radius_km > 0, "geometry.coverage_radius_km: must be > 0");
    need(k1 >= 1, "geometry.k1: must be >= 1");
    need(k2 >= 1, "geometry.k2: must be >= 1");
    need(beam_radius_km > 0, "geometry.beam_radius_km: must be > 0");
    need(secondary_beams >= 1, "geometry.secondary_beams: must be >= 1");
    need(secondary_radius_km > 0, "geometry.secondary_radius_km: must be > 0");
    need(users_per_beam >= 1, "geometry.users_per_beam: must be >= 1");
    try {
        link.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("link.") + e.what());
    }
    need(!architectures.empty(), "run.architectures: at least one architecture required");
    need(drops >= 1, "run.drops: must be >= 1");
    need(threads >= 0, "run.threads: must be >= 0");
    need(std::isfinite(sweep_start_dbw) && std::isfinite(sweep_stop_dbw), "sweep: bounds must be finite");
    need(sweep_start_dbw <= sweep_stop_dbw, "sweep.start_dbw: must be <= sweep.stop_dbw");
    need(sweep_step_dbw > 0, "sweep.step_dbw: must be > 0");
    const auto grid = powers_dbw();
    for (double c : cdf_points_dbw) {
        bool on_grid = false;
        for (double p : grid) on_grid = on_grid || std::fabs(p - c) < 1e-9;
        need(on_grid, "sweep.cdf_dbw: " + format_double(c) + " is not a sweep point");
    }
    need(siua.alpha > 0 && siua.alpha < 1, "scheduler.alpha: must lie in (0, 1)");
    need(siua.lambda >= 0, "scheduler.lambda: must be >= 0");
    need(conventional_reuse >= 1 && conventional_reuse <= std::min(k1, k2),
         "conventional.reuse: must lie in [1, min(k1, k2)]");
    need(slot_reuse >= 1 && slot_reuse <= k1, "cognitive.slot_reuse: must lie in [1, k1]");
    need(!std::isnan(i_over_n_cap_db), "cognitive.i_over_n_cap_db: must be a number");
    need(secondary_budget >= 0, "cognitive.secondary_budget: must be >= 0");
    need(unavailable_threshold >= 0, "metrics.unavailable_threshold: must be >= 0");
}

Scenario parse_scenario(const std::string& text, Scenario base) {
    std::map<std::string, const Entry*> index;
    for (const auto& e : entries()) index[e.key] = &e;
    std::map<std::string, int> seen;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = index.find(key);
        if (it == index.end()) throw ConfigError(key + ": unknown key (line " + std::to_string(lineno) + ")");
        if (seen.count(key))
            throw ConfigError(key + ": repeated on line " + std::to_string(lineno) + ", first set on line " +
                              std::to_string(seen[key]));
        seen[key] = lineno;
        it->second->set(base, value);
    }
    base.validate();
    return base;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError(path + ": cannot open scenario file");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str());
}

std::string scenario_to_config(const Scenario& s) {
    std::string out;
    for (const auto& e : entries()) out += std::string(e.key) + " = " + e.get(s) + "\n";
    return out;
}

// ---------------------------------------------------------------- drops

std::uint64_t drop_seed(std::uint64_t master, std::uint64_t power_index, std::uint64_t drop_index) {
    return hash_seed({master, power_index, drop_index});
}

Geometry build_geometry(const Scenario& s) {
    Geometry g;
    g.sat1 = build_beam_layout(s.coverage_radius_km, s.k1, s.beam_radius_km, SatelliteId::primary);
    g.sat2 = build_beam_layout(s.coverage_radius_km, s.k2, s.beam_radius_km, SatelliteId::secondary);
    g.secondary = build_beam_layout(s.coverage_radius_km, s.secondary_beams, s.secondary_radius_km,
                                    SatelliteId::secondary, LatticeAnchor::shifted);
    g.primary_pattern = primary_pattern(g.sat1, s.slot_reuse);
    g.secondary_pattern = secondary_pattern(g.primary_pattern, g.sat1, g.secondary, s.secondary_budget);
    g.conventional.reuse = s.conventional_reuse;
    g.conventional.color1 = color_beams(g.sat1, s.conventional_reuse);
    g.conventional.color2 = color_beams(g.sat2, s.conventional_reuse);
    return g;
}

Drop make_drop(const Scenario& s, const Geometry& g, std::uint64_t seed) {
    Drop d;
    d.users = drop_users(g.sat1, s.users_per_beam, hash_seed({seed, 0}), s.link);
    const auto phase_seed = hash_seed({seed, 1});
    d.dual = build_channel(g.sat1, g.sat2, d.users, s.link, phase_seed, s.phases);
    d.cog = build_channel(g.sat1, g.secondary, d.users, s.link, phase_seed, s.phases);
    return d;
}

ArchitectureResult evaluate(Architecture a, const Scenario& s, const Geometry& g, const Drop& d, double p_tot_w) {
    switch (a) {
        case Architecture::conventional: return eval_conventional(d.dual, p_tot_w, g.conventional);
        case Architecture::cooperative: return eval_cooperative(d.dual, p_tot_w);
        case Architecture::coordinated: {
            SiuaParams p = s.siua;
            p.k1 = s.k1;
            p.k2 = s.k2;
            return eval_coordinated(d.dual, p_tot_w, p, s.power_mode);
        }
        case Architecture::cognitive:
        case Architecture::cognitive_pc: {
            const auto setup = make_cognitive_setup(d.cog, d.users, g.primary_pattern, g.secondary_pattern);
            CognitiveParams cp;
            cp.power_control = a == Architecture::cognitive_pc;
            cp.i_over_n_cap_db = s.i_over_n_cap_db;
            return eval_cognitive(d.cog, p_tot_w, setup, cp);
        }
    }
    throw std::invalid_argument("unknown architecture");
}

// ---------------------------------------------------------------- sweep

namespace {

constexpr int kMaxResamples = 64;

struct DropOutcome {
    std::vector<ArchitectureResult> results;
    int resampled = 0;
};

DropOutcome run_one(const Scenario& s, const Geometry& g, std::size_t pi, std::size_t di, double p_dbw) {
    const double p_w = db_to_lin(p_dbw);
    const auto base = drop_seed(s.seed, pi, di);
    auto where = [&] {
        return " (power index " + std::to_string(pi) + ", " + format_double(p_dbw) + " dBW, drop " +
               std::to_string(di) + ")";
    };
    for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
        const auto seed = attempt == 0 ? base : hash_seed({base, static_cast<std::uint64_t>(attempt)});
        const Drop d = make_drop(s, g, seed);
        DropOutcome out;
        out.resampled = attempt;
        try {
            for (auto a : s.architectures) out.results.push_back(evaluate(a, s, g, d, p_w));
            return out;
        } catch (const RankDeficientError&) {
            continue;
        } catch (const ConvergenceError& e) {
            throw NumericalError(std::string(e.what()) + where());
        }
    }
    throw NumericalError("drop could not be scheduled after " + std::to_string(kMaxResamples) + " resamples" +
                         where());
}

}  // namespace

SweepResult run_sweep(const Scenario& s, int threads) {
    s.validate();
    const Geometry g = build_geometry(s);
    const auto powers = s.powers_dbw();
    const std::size_t np = powers.size();
    const std::size_t nd = static_cast<std::size_t>(s.drops);
    const std::size_t total = np * nd;

    int workers = threads >= 0 ? threads : s.threads;
    if (workers == 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), total));

    std::vector<DropOutcome> outcomes(total);
    std::vector<std::exception_ptr> errors(total);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            try {
                outcomes[i] = run_one(s, g, i / nd, i % nd, powers[i / nd]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    SweepResult r;
    r.scenario = s;
    r.points.resize(np);
    for (std::size_t pi = 0; pi < np; ++pi) {
        PowerPoint& pt = r.points[pi];
        pt.p_tot_dbw = powers[pi];
        pt.per_arch.resize(s.architectures.size());
        for (std::size_t di = 0; di < nd; ++di) {
            const DropOutcome& o = outcomes[pi * nd + di];
            pt.resampled += o.resampled;
            for (std::size_t ai = 0; ai < o.results.size(); ++ai) {
                const auto& res = o.results[ai];
                ArchSamples& as = pt.per_arch[ai];
                double jain = 0.0;
                try {
                    jain = jain_index(res.per_user_rate);
                } catch (const std::invalid_argument& e) {
                    throw NumericalError(std::string(e.what()) + " (power index " + std::to_string(pi) +
                                         ", drop " + std::to_string(di) + ")");
                }
                as.se.push_back(spectral_efficiency(res.per_user_rate));
                as.jain.push_back(jain);
                as.unavailable.push_back(rate_cdf(res.per_user_rate).below(s.unavailable_threshold));
                as.consumed_w.push_back(res.consumed_power_w);
                as.rates.push_back(res.per_user_rate);
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------- output

namespace {

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

}  // namespace

std::vector<SummaryRow> aggregate(const SweepResult& r) {
    std::vector<SummaryRow> rows;
    for (std::size_t ai = 0; ai < r.scenario.architectures.size(); ++ai) {
        for (const auto& pt : r.points) {
            const ArchSamples& as = pt.per_arch[ai];
            SummaryRow row;
            row.scenario_id = r.scenario.id;
            row.arch = r.scenario.architectures[ai];
            row.p_tot_dbw = pt.p_tot_dbw;
            row.drops = static_cast<int>(as.se.size());
            row.se_mean = mean(as.se);
            row.se_stderr = stderr_of(as.se);
            row.jain_mean = mean(as.jain);
            row.pe_mean = power_efficiency(row.se_mean, pt.p_tot_dbw);
            row.unavailable_frac = mean(as.unavailable);
            rows.push_back(row);
        }
    }
    return rows;
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, p);
}

std::string csv_text(const std::vector<SummaryRow>& rows) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& r : rows) {
        out += r.scenario_id + "," + architecture_name(r.arch) + "," + format_double(r.p_tot_dbw) + "," +
               std::to_string(r.drops) + "," + format_double(r.se_mean) + "," + format_double(r.se_stderr) + "," +
               format_double(r.jain_mean) + "," + format_double(r.pe_mean) + "," +
               format_double(r.unavailable_frac) + "\n";
    }
    return out;
}

std::vector<SummaryRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || trim(line) != kCsvHeader) throw ConfigError("csv: header mismatch");
    std::vector<SummaryRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(trim(cell));
        if (f.size() != 9) throw ConfigError("csv line " + std::to_string(lineno) + ": expected 9 fields");
        SummaryRow r;
        r.scenario_id = f[0];
        try {
            r.arch = parse_architecture(f[1]);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("csv line " + std::to_string(lineno) + ": " + e.what());
        }
        r.p_tot_dbw = to_double("p_tot_dbw", f[2]);
        r.drops = static_cast<int>(to_int("drops", f[3]));
        r.se_mean = to_double("se_mean", f[4]);
        r.se_stderr = to_double("se_stderr", f[5]);
        r.jain_mean = to_double("jain_mean", f[6]);
        r.pe_mean = to_double("pe_mean", f[7]);
        r.unavailable_frac = to_double("unavailable_frac", f[8]);
        rows.push_back(r);
    }
    return rows;
}

void emit_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error(path + ": cannot write");
    f << csv_text(rows);
    if (!f) throw std::runtime_error(path + ": write failed");
}

std::optional<double> find_crossing(const std::vector<double>& x, const std::vector<double>& a,
                                    const std::vector<double>& b) {
    if (x.size() != a.size() || x.size() != b.size()) throw std::invalid_argument("find_crossing: size mismatch");
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double d0 = a[i] - b[i];
        const double d1 = a[i + 1] - b[i + 1];
        if (d0 == 0.0) continue;
        if (d1 == 0.0) {
            // touching the axis counts only when the sign actually flips
            std::size_t j = i + 1;
            while (j < x.size() && a[j] - b[j] == 0.0) ++j;
            if (j < x.size() && (a[j] - b[j] > 0.0) != (d0 > 0.0)) return x[i + 1];
            continue;
        }
        if ((d0 > 0.0) != (d1 > 0.0)) return x[i] + (x[i + 1] - x[i]) * d0 / (d0 - d1);
    }
    return std::nullopt;
}

namespace {

std::vector<const SummaryRow*> curve(const std::vector<SummaryRow>& rows, Architecture a) {
    std::vector<const SummaryRow*> c;
    for (const auto& r : rows)
        if (r.arch == a) c.push_back(&r);
    std::stable_sort(c.begin(), c.end(), [](auto* l, auto* r) { return l->p_tot_dbw < r->p_tot_dbw; });
    return c;
}

double field(const SummaryRow& r, Field f) {
    switch (f) {
        case Field::se_mean: return r.se_mean;
        case Field::se_stderr: return r.se_stderr;
        case Field::jain_mean: return r.jain_mean;
        case Field::pe_mean: return r.pe_mean;
        case Field::unavailable_frac: return r.unavailable_frac;
    }
    return 0.0;
}

}  // namespace

std::optional<double> find_crossing(const std::vector<SummaryRow>& rows, Architecture a, Architecture b) {
    const auto ca = curve(rows, a);
    const auto cb = curve(rows, b);
    std::vector<double> x, ya, yb;
    for (auto* ra : ca)
        for (auto* rb : cb)
            if (ra->p_tot_dbw == rb->p_tot_dbw) {
                x.push_back(ra->p_tot_dbw);
                ya.push_back(ra->se_mean);
                yb.push_back(rb->se_mean);
            }
    return find_crossing(x, ya, yb);
}

double value_at(const std::vector<SummaryRow>& rows, Architecture a, Field f, double p) {
    const auto c = curve(rows, a);
    if (c.empty()) throw std::invalid_argument("value_at: architecture not present");
    if (p <= c.front()->p_tot_dbw) return field(*c.front(), f);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        const double x0 = c[i]->p_tot_dbw, x1 = c[i + 1]->p_tot_dbw;
        if (p <= x1) {
            const double t = (p - x0) / (x1 - x0);
            return field(*c[i], f) * (1.0 - t) + field(*c[i + 1], f) * t;
        }
    }
    return field(*c.back(), f);
}

std::string summary_text(const SweepResult& r, const std::vector<SummaryRow>& rows) {
    std::ostringstream os;
    const auto& archs = r.scenario.architectures;
    os << "scenario " << r.scenario.id << ", seed " << r.scenario.seed << ", " << r.scenario.drops
       << " drops per point\n";
    os << "crossings (first sign change of the mean SE difference):\n";
    for (std::size_t i = 0; i < archs.size(); ++i)
        for (std::size_t j = i + 1; j < archs.size(); ++j) {
            const auto c = find_crossing(rows, archs[i], archs[j]);
            os << "  " << architecture_name(archs[i]) << " x " << architecture_name(archs[j]) << ": "
               << (c ? format_double(*c) + " dBW" : std::string("none")) << "\n";
        }
    os << "fairness: jain_mean is the mean per-drop index; pooled is the index over all drops' users\n";
    for (std::size_t ai = 0; ai < archs.size(); ++ai) {
        for (const auto& pt : r.points) {
            bool listed = false;
            for (double c : r.scenario.cdf_points_dbw) listed = listed || std::fabs(c - pt.p_tot_dbw) < 1e-9;
            if (!listed) continue;
            std::vector<double> all;
            for (const auto& v : pt.per_arch[ai].rates) all.insert(all.end(), v.begin(), v.end());
            os << "  " << architecture_name(archs[ai]) << " @ " << format_double(pt.p_tot_dbw)
               << " dBW: pooled " << format_double(jain_index(all)) << "\n";
        }
    }
    int resampled = 0;
    for (const auto& pt : r.points) resampled += pt.resampled;
    os << "resampled drops: " << resampled << "\n";
    for (auto a : archs)
        if (a == Architecture::cooperative) os << "note: cooperative is an upper bound, not an achievable scheme\n";
    return os.str();
}

std::string rates_csv(const SweepResult& r) {
    std::string out = "scenario_id,architecture,p_tot_dbw,drop,user,rate\n";
    const auto& archs = r.scenario.architectures;
    for (std::size_t ai = 0; ai < archs.size(); ++ai)
        for (const auto& pt : r.points) {
            bool listed = false;
            for (double c : r.scenario.cdf_points_dbw) listed = listed || std::fabs(c - pt.p_tot_dbw) < 1e-9;
            if (!listed) continue;
            const auto& rates = pt.per_arch[ai].rates;
            for (std::size_t d = 0; d < rates.size(); ++d)
                for (std::size_t u = 0; u < rates[d].size(); ++u)
                    out += r.scenario.id + "," + architecture_name(archs[ai]) + "," + format_double(pt.p_tot_dbw) +
                           "," + std::to_string(d) + "," + std::to_string(u) + "," + format_double(rates[d][u]) +
                           "\n";
        }
    return out;
}

std::string git_blob_hash(const std::string& content) {
    const std::string blob = "blob " + std::to_string(content.size()) + std::string(1, '\0') + content;
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha1(), nullptr) != 1)
        throw std::runtime_error("sha1 digest failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

std::string metadata_json(const SweepResult& r, const std::string& csv) {
    nlohmann::ordered_json j;
    j["scenario_id"] = r.scenario.id;
    j["seed"] = r.scenario.seed;
    j["drops_per_point"] = r.scenario.drops;
    j["config"] = scenario_to_config(r.scenario);
    j["csv_sha1"] = git_blob_hash(csv);
    int resampled = 0;
    for (const auto& pt : r.points) resampled += pt.resampled;
    j["resampled_drops"] = resampled;
    j["scheduler"] = {{"alpha", r.scenario.siua.alpha}, {"lambda", r.scenario.siua.lambda}};
    j["unavailable_threshold"] = r.scenario.unavailable_threshold;
    nlohmann::ordered_json tags = nlohmann::ordered_json::object();
    for (auto a : r.scenario.architectures)
        tags[architecture_name(a)] = a == Architecture::cooperative ? "upper bound - not an achievable scheme"
                                                                    : "achievable";
    j["architectures"] = tags;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::ostringstream ts;
    ts << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
    j["generated_at"] = ts.str();
    return j.dump(2) + "\n";
}

OutputPaths write_outputs(const SweepResult& r, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error(dir + ": cannot create output directory");
    const auto rows = aggregate(r);
    const std::string csv = csv_text(rows);
    OutputPaths p;
    p.csv = (fs::path(dir) / "results.csv").string();
    p.metadata = (fs::path(dir) / "results.meta.json").string();
    p.summary = (fs::path(dir) / "summary.txt").string();
    p.rates = (fs::path(dir) / "rates.csv").string();
    auto put = [](const std::string& path, const std::string& text) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error(path + ": cannot write");
        f << text;
        if (!f) throw std::runtime_error(path + ": write failed");
    };
    put(p.csv, csv);
    put(p.metadata, metadata_json(r, csv));
    put(p.summary, summary_text(r, rows));
    put(p.rates, rates_csv(r));
    return p;
}

}  // namespace dualsat
