// dualsat: command-line driver for the co-location simulator.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "dualsat/harness.hpp"

using namespace dualsat;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

Scenario scenario_from(const std::string& path) {
    return path.empty() ? Scenario{} : load_scenario(path);
}

int cmd_table1(const std::string& config) {
    const Scenario s = scenario_from(config);
    const LinkAudit a = audit_link_budget(s.link);
    struct Line {
        const char* name;
        double value;
        double reference;
        double tol;
        const char* unit;
    };
    const Line lines[] = {
        {"path loss", a.path_loss_db, 210.0, 0.2, "dB"},
        {"noise power", a.noise_dbw, -118.0, 0.2, "dBW"},
        {"transmit power per beam", a.per_beam_power_w, 17.38, 0.1, "W"},
        {"EIRP", a.eirp_dbw, 66.0, 0.5, "dBW"},
        {"carrier power", a.carrier_dbw, -103.0, 0.5, "dBW"},
        {"C/N", a.c_over_n_db, 15.0, 0.5, "dB"},
    };
    bool ok = true;
    std::printf("%-26s %12s %10s %8s  %s\n", "quantity", "computed", "reference", "tol", "status");
    for (const auto& l : lines) {
        const bool pass = std::fabs(l.value - l.reference) <= l.tol;
        ok = ok && pass;
        std::printf("%-26s %12.3f %10.2f %8.2f  %s %s\n", l.name, l.value, l.reference, l.tol,
                    pass ? "ok" : "OFF", l.unit);
    }
    return ok ? 0 : 1;
}

int cmd_patterns(const std::string& config, const std::string& out) {
    const Scenario s = scenario_from(config);
    const Geometry g = build_geometry(s);
    std::ostringstream os;
    os << format_pattern(g.primary_pattern, "primary");
    os << format_pattern(g.secondary_pattern, "secondary");
    const auto parents = assign_parents(g.sat1, g.secondary);
    os << "# secondary parents\n";
    for (std::size_t b = 0; b < parents.size(); ++b) os << b << '\t' << parents[b] << '\n';
    if (out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error(out + ": cannot write");
        f << os.str();
    }
    return 0;
}

int cmd_run(const std::string& config, std::optional<std::uint64_t> seed, std::optional<int> drops,
            const std::string& out, const std::vector<std::string>& archs, std::optional<int> threads) {
    Scenario s = scenario_from(config);
    if (seed) s.seed = *seed;
    if (drops) s.drops = *drops;
    if (threads) s.threads = *threads;
    if (!out.empty()) s.output_dir = out;
    if (!archs.empty()) {
        std::set<Architecture> keep;
        for (const auto& a : archs) {
            try {
                keep.insert(parse_architecture(a));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("--arch: ") + e.what());
            }
        }
        std::vector<Architecture> filtered;
        for (auto a : s.architectures)
            if (keep.count(a)) filtered.push_back(a);
        s.architectures = filtered;
    }
    s.validate();
    const SweepResult r = run_sweep(s);
    const OutputPaths p = write_outputs(r, s.output_dir);
    std::cout << summary_text(r, aggregate(r));
    std::cout << "wrote " << p.csv << "\n";
    return 0;
}

int cmd_crossing(const std::vector<std::string>& csvs, const std::vector<std::string>& archs) {
    std::vector<SummaryRow> rows;
    for (const auto& path : csvs) {
        std::ifstream f(path);
        if (!f) throw ConfigError(path + ": cannot open");
        std::stringstream ss;
        ss << f.rdbuf();
        auto part = parse_csv(ss.str());
        rows.insert(rows.end(), part.begin(), part.end());
    }
    std::vector<Architecture> present;
    for (const auto& r : rows)
        if (std::find(present.begin(), present.end(), r.arch) == present.end()) present.push_back(r.arch);
    if (!archs.empty()) {
        present.clear();
        for (const auto& a : archs) {
            try {
                present.push_back(parse_architecture(a));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("--arch: ") + e.what());
            }
        }
    }
    for (std::size_t i = 0; i < present.size(); ++i)
        for (std::size_t j = i + 1; j < present.size(); ++j) {
            const auto c = find_crossing(rows, present[i], present[j]);
            std::cout << architecture_name(present[i]) << "," << architecture_name(present[j]) << ","
                      << (c ? format_double(*c) : std::string("none")) << "\n";
        }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dual multibeam satellite co-location simulator"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    std::vector<std::string> archs;
    std::optional<std::uint64_t> seed;
    std::optional<int> drops;
    std::optional<int> threads;

    auto* run = app.add_subcommand("run", "Run the power sweep and write CSV outputs");
    run->add_option("config", config, "Scenario file (defaults when omitted)");
    run->add_option("--seed", seed, "Master seed");
    run->add_option("--drops", drops, "Drops per power point");
    run->add_option("--out", out, "Output directory");
    run->add_option("--arch", archs, "Architecture to keep (repeatable)");
    run->add_option("--threads", threads, "Worker threads, 0 for all cores");

    auto* table1 = app.add_subcommand("table1", "Print the link-budget audit");
    table1->add_option("config", config, "Scenario file");

    auto* patterns = app.add_subcommand("patterns", "Dump beam-hopping slot tables");
    patterns->add_option("config", config, "Scenario file");
    patterns->add_option("--out", out, "Write to this file instead of stdout");

    std::vector<std::string> csvs;
    auto* crossing = app.add_subcommand("crossing", "Report SE curve crossings from result CSVs");
    crossing->add_option("csv", csvs, "Result CSV files")->required();
    crossing->add_option("--arch", archs, "Architectures to compare (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) return cmd_run(config, seed, drops, out, archs, threads);
        if (*table1) return cmd_table1(config);
        if (*patterns) return cmd_patterns(config, out);
        if (*crossing) return cmd_crossing(csvs, archs);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
