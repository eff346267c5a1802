#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualsat/architectures.hpp"

namespace dualsat {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Scenario {
    std::string id = "default";

    double coverage_radius_km = 500.0;
    int k1 = 7;
    int k2 = 7;
    double beam_radius_km = 250.0;
    int secondary_beams = 28;
    double secondary_radius_km = 125.0;
    int users_per_beam = 2;

    LinkBudget link;
    PhaseModel phases = PhaseModel::per_satellite;

    std::vector<Architecture> architectures = all_architectures();
    double sweep_start_dbw = -5.0;
    double sweep_stop_dbw = 50.0;
    double sweep_step_dbw = 2.5;
    std::vector<double> cdf_points_dbw = {22.5};
    int drops = 200;
    std::uint64_t seed = 1;
    int threads = 0;  // 0: hardware concurrency

    SiuaParams siua;
    PowerMode power_mode = PowerMode::uniform;
    int conventional_reuse = 3;
    int slot_reuse = 3;
    double i_over_n_cap_db = -10.0;
    int secondary_budget = 0;  // 0: unlimited
    double unavailable_threshold = 0.1;

    std::string output_dir = "results";

    std::vector<double> powers_dbw() const;
    void validate() const;  // throws ConfigError naming the field
};

// Flat "section.key = value" lines; '#' starts a comment. Unknown or repeated
// keys are errors.
Scenario parse_scenario(const std::string& text, Scenario base = {});
Scenario load_scenario(const std::string& path);
std::string scenario_to_config(const Scenario& s);

std::uint64_t drop_seed(std::uint64_t master, std::uint64_t power_index, std::uint64_t drop_index);

struct Geometry {
    BeamLayout sat1;
    BeamLayout sat2;
    BeamLayout secondary;
    SlotPattern primary_pattern;
    SlotPattern secondary_pattern;
    ConventionalParams conventional;
};

Geometry build_geometry(const Scenario& s);

struct Drop {
    std::vector<UserTerminal> users;
    DualChannel dual;  // both satellites with the large-beam layout
    DualChannel cog;   // primary large beams and secondary small beams
};

Drop make_drop(const Scenario& s, const Geometry& g, std::uint64_t seed);

ArchitectureResult evaluate(Architecture a, const Scenario& s, const Geometry& g, const Drop& d, double p_tot_w);

struct ArchSamples {
    std::vector<double> se;
    std::vector<double> jain;
    std::vector<double> unavailable;
    std::vector<double> consumed_w;
    std::vector<std::vector<double>> rates;
};

struct PowerPoint {
    double p_tot_dbw = 0.0;
    std::vector<ArchSamples> per_arch;  // same order as scenario.architectures
    int resampled = 0;
};

struct SweepResult {
    Scenario scenario;
    std::vector<PowerPoint> points;
};

// threads < 0 uses scenario.threads.
SweepResult run_sweep(const Scenario& s, int threads = -1);

struct SummaryRow {
    std::string scenario_id;
    Architecture arch = Architecture::conventional;
    double p_tot_dbw = 0.0;
    int drops = 0;
    double se_mean = 0.0;
    double se_stderr = 0.0;
    double jain_mean = 0.0;
    double pe_mean = 0.0;
    double unavailable_frac = 0.0;
};

std::vector<SummaryRow> aggregate(const SweepResult& r);

inline constexpr const char* kCsvHeader =
    "scenario_id,architecture,p_tot_dbw,drops,se_mean,se_stderr,jain_mean,pe_mean,unavailable_frac";

std::string format_double(double v);
std::string csv_text(const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> parse_csv(const std::string& text);
void emit_csv(const std::vector<SummaryRow>& rows, const std::string& path);

// First sign change of a - b over the grid, linearly interpolated.
std::optional<double> find_crossing(const std::vector<double>& x, const std::vector<double>& a,
                                    const std::vector<double>& b);
std::optional<double> find_crossing(const std::vector<SummaryRow>& rows, Architecture a, Architecture b);

enum class Field { se_mean, se_stderr, jain_mean, pe_mean, unavailable_frac };
// Linear interpolation of one column of one architecture at power p.
double value_at(const std::vector<SummaryRow>& rows, Architecture a, Field f, double p_dbw);

std::string summary_text(const SweepResult& r, const std::vector<SummaryRow>& rows);
std::string rates_csv(const SweepResult& r);
std::string git_blob_hash(const std::string& content);
std::string metadata_json(const SweepResult& r, const std::string& csv);

struct OutputPaths {
    std::string csv;
    std::string metadata;
    std::string summary;
    std::string rates;
};

OutputPaths write_outputs(const SweepResult& r, const std::string& dir);

}  // namespace dualsat
