#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dualsat/harness.hpp"
#include "dualsat/metrics.hpp"

namespace py = pybind11;
using namespace dualsat;

namespace {

py::dict audit_dict(const LinkAudit& a) {
    py::dict d;
    d["path_loss_db"] = a.path_loss_db;
    d["noise_dbw"] = a.noise_dbw;
    d["per_beam_power_w"] = a.per_beam_power_w;
    d["eirp_dbw"] = a.eirp_dbw;
    d["carrier_dbw"] = a.carrier_dbw;
    d["c_over_n_db"] = a.c_over_n_db;
    return d;
}

Scenario scenario_from(const std::string& config) { return config.empty() ? Scenario{} : parse_scenario(config); }

}  // namespace

PYBIND11_MODULE(_dualsat, m) {
    m.doc() = "Dual multibeam satellite co-location simulator";

    py::register_exception<RankDeficientError>(m, "RankDeficientError");
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError");

    m.def(
        "link_audit", [](const std::string& config) { return audit_dict(audit_link_budget(scenario_from(config).link)); },
        py::arg("config") = "");

    m.def("zf_directions", &zf_directions, py::arg("h"));
    m.def(
        "allocate_powers",
        [](const CMatrix& w, const CMatrix& h, double limit, double noise, const std::string& mode) {
            return allocate_powers(w, h, limit, noise, mode == "gradient" ? PowerMode::gradient : PowerMode::uniform);
        },
        py::arg("w"), py::arg("h"), py::arg("per_antenna_limit_w"), py::arg("noise_w"), py::arg("mode") = "uniform");
    m.def("sum_capacity_bound", &sum_capacity_bound, py::arg("h_joint"), py::arg("total_power_w"), py::arg("noise_w"));

    m.def("sus_select", &sus_select, py::arg("h_pool"), py::arg("alpha"), py::arg("max_users"));
    m.def(
        "siua_allocate",
        [](const CMatrix& h1, const CMatrix& h2, double alpha, double lambda, int k1, int k2) {
            const auto a = siua_allocate(h1, h2, {alpha, lambda, k1, k2});
            return py::make_tuple(a.sat1, a.sat2);
        },
        py::arg("h1"), py::arg("h2"), py::arg("alpha") = SiuaParams{}.alpha, py::arg("lambda_interf") = SiuaParams{}.lambda,
        py::arg("k1") = 7, py::arg("k2") = 7);

    m.def("jain_index", &jain_index, py::arg("rates"));
    m.def("spectral_efficiency", &spectral_efficiency, py::arg("rates"));
    m.def("power_efficiency", &power_efficiency, py::arg("se"), py::arg("p_tot_dbw"));

    m.def(
        "patterns",
        [](const std::string& config) {
            const Geometry g = build_geometry(scenario_from(config));
            return py::make_tuple(g.primary_pattern.active_sets, g.secondary_pattern.active_sets);
        },
        py::arg("config") = "");

    m.def(
        "run_sweep",
        [](const std::string& config, std::optional<int> drops, std::optional<std::uint64_t> seed, int threads) {
            Scenario s = scenario_from(config);
            if (drops) s.drops = *drops;
            if (seed) s.seed = *seed;
            SweepResult r;
            {
                py::gil_scoped_release release;
                r = run_sweep(s, threads);
            }
            return csv_text(aggregate(r));
        },
        py::arg("config") = "", py::arg("drops") = py::none(), py::arg("seed") = py::none(), py::arg("threads") = 1,
        "Run the power sweep and return the results CSV text.");

    m.def("find_crossing", py::overload_cast<const std::vector<double>&, const std::vector<double>&,
                                             const std::vector<double>&>(&find_crossing),
          py::arg("x"), py::arg("a"), py::arg("b"));
    m.attr("CSV_HEADER") = kCsvHeader;
}
