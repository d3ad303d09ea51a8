#include "oemswap/gaussian.hpp"
#include "oemswap/oem_model.hpp"
#include "oemswap/output_spectra.hpp"
#include "oemswap/swap_protocol.hpp"
#include "oemswap/sweep.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include <sstream>

namespace py = pybind11;
using namespace oemswap;

namespace {

std::vector<ModeLabel> parse_labels(const std::vector<std::string>& names) {
    std::vector<ModeLabel> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(parse_mode_label(n));
    return out;
}

std::vector<std::string> label_names(const std::vector<ModeLabel>& labels) {
    std::vector<std::string> out;
    out.reserve(labels.size());
    for (const auto& m : labels) out.push_back(to_string(m));
    return out;
}

}  // namespace

PYBIND11_MODULE(_oemswap, m) {
    m.doc() =
        "Gaussian-state simulator of remote microwave entanglement via "
        "opto-electro-mechanical interfaces and CV entanglement swapping";

    py::class_<CovMatrix>(m, "CovMatrix")
        .def(py::init([](const std::vector<std::string>& modes,
                         const Eigen::MatrixXd& data) {
                 return CovMatrix(parse_labels(modes), data);
             }),
             py::arg("modes"), py::arg("data"))
        .def_static("vacuum",
                    [](const std::vector<std::string>& modes) {
                        return CovMatrix::vacuum(parse_labels(modes));
                    })
        .def_property_readonly(
            "modes", [](const CovMatrix& v) { return label_names(v.modes()); })
        .def_property_readonly(
            "data", [](const CovMatrix& v) { return v.data(); })
        .def("reduced",
             [](const CovMatrix& v, const std::vector<std::string>& keep) {
                 return v.reduced(parse_labels(keep));
             })
        .def("to_json_str",
             [](const CovMatrix& v) { return v.to_json().dump(); })
        .def("__repr__", [](const CovMatrix& v) {
            std::ostringstream os;
            os << "CovMatrix(modes=[";
            for (const auto& mode : v.modes()) os << to_string(mode) << ' ';
            os << "], dim=" << v.dim() << ")";
            return os.str();
        });

    m.def("symplectic_eigenvalues",
          [](const Eigen::MatrixXd& v) { return symplectic_eigenvalues(v); });
    m.def("min_symplectic_eigenvalue", &min_symplectic_eigenvalue);
    m.def("partial_transpose",
          [](const CovMatrix& v, const std::vector<std::string>& modes) {
              return partial_transpose(v, parse_labels(modes));
          });
    m.def("log_negativity",
          [](const CovMatrix& v, const std::vector<std::string>& side_a,
             const std::vector<std::string>& side_b) {
              return log_negativity(v, parse_labels(side_a),
                                    parse_labels(side_b));
          });
    m.def("purity", py::overload_cast<const CovMatrix&>(&purity));
    m.def("beamsplitter_apply",
          [](const CovMatrix& v, const std::string& a, const std::string& b) {
              return beamsplitter_apply(v, parse_mode_label(a),
                                        parse_mode_label(b));
          });
    m.def("homodyne_condition",
          [](const CovMatrix& v,
             const std::vector<std::pair<std::string, std::string>>& meas) {
              std::vector<std::pair<ModeLabel, Quadrature>> parsed;
              for (const auto& [mode, quad] : meas)
                  parsed.emplace_back(parse_mode_label(mode),
                                      quad == "X" ? Quadrature::X
                                                  : Quadrature::Y);
              return homodyne_condition(v, parsed);
          });

    py::class_<ModeParams>(m, "ModeParams")
        .def(py::init<>())
        .def_readwrite("wavelength", &ModeParams::wavelength)
        .def_readwrite("power", &ModeParams::power)
        .def_readwrite("kappa", &ModeParams::kappa)
        .def_readwrite("detuning", &ModeParams::detuning)
        .def_readwrite("g", &ModeParams::g);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_readwrite("omega_m", &SystemParams::omega_m)
        .def_readwrite("q_m", &SystemParams::q_m)
        .def_readwrite("mass", &SystemParams::mass)
        .def_readwrite("temperature", &SystemParams::temperature)
        .def_readwrite("b", &SystemParams::b)
        .def_readwrite("c", &SystemParams::c)
        .def_readwrite("w", &SystemParams::w);

    py::class_<DerivedMode>(m, "DerivedMode")
        .def_readonly("drive_rate", &DerivedMode::drive_rate)
        .def_readonly("alpha", &DerivedMode::alpha)
        .def_readonly("coupling", &DerivedMode::coupling);

    py::class_<DerivedRates>(m, "DerivedRates")
        .def_readonly("gamma_m", &DerivedRates::gamma_m)
        .def_readonly("nbar_m", &DerivedRates::nbar_m)
        .def_readonly("nbar_w", &DerivedRates::nbar_w)
        .def_readonly("mean_position", &DerivedRates::mean_position)
        .def_readonly("b", &DerivedRates::b)
        .def_readonly("c", &DerivedRates::c)
        .def_readonly("w", &DerivedRates::w);

    py::class_<LinearModel>(m, "LinearModel")
        .def_readonly("drift", &LinearModel::drift)
        .def_readonly("diffusion", &LinearModel::diffusion)
        .def_readonly("omega_m", &LinearModel::omega_m);

    py::class_<StabilityReport>(m, "StabilityReport")
        .def_readonly("stable", &StabilityReport::stable)
        .def_readonly("spectral_abscissa", &StabilityReport::spectral_abscissa)
        .def_readonly("eigenvalues", &StabilityReport::eigenvalues);

    m.def("derive_rates", &derive_rates);
    m.def("build_linear_model",
          py::overload_cast<const SystemParams&>(&build_linear_model));
    m.def("check_stability", &check_stability);
    m.def("solve_lyapunov", &solve_lyapunov, py::arg("model"),
          py::arg("site") = 1);
    m.def("reference_params", &reference_params);

    py::class_<FilterSpec>(m, "FilterSpec")
        .def(py::init<double, double>(), py::arg("tau"), py::arg("omega"))
        .def_readwrite("tau", &FilterSpec::tau)
        .def_readwrite("omega", &FilterSpec::omega);

    py::class_<FilterBank>(m, "FilterBank")
        .def(py::init<FilterSpec, FilterSpec, FilterSpec>(), py::arg("b"),
             py::arg("c"), py::arg("w"))
        .def_readwrite("b", &FilterBank::b)
        .def_readwrite("c", &FilterBank::c)
        .def_readwrite("w", &FilterBank::w);

    m.def("reference_filters", &reference_filters, py::arg("omega_m"),
          py::arg("tau_scaled") = 500.0);
    m.def("filter_transfer", &filter_transfer);

    py::class_<OutputCM>(m, "OutputCM")
        .def_readonly("cm", &OutputCM::cm)
        .def_property_readonly(
            "max_error", [](const OutputCM& o) { return o.diag.max_error; })
        .def("to_json_str",
             [](const OutputCM& o) { return o.to_json().dump(); });

    m.def("output_cm", &output_cm, py::arg("model"), py::arg("filters"),
          py::arg("site") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("output_cm_cascaded_oracle", &output_cm_cascaded_oracle,
          py::arg("model"), py::arg("filters"), py::arg("site") = 1);

    py::class_<SiteState>(m, "SiteState")
        .def(py::init<CovMatrix>())
        .def_readonly("cm", &SiteState::cm);

    py::class_<SwapResult>(m, "SwapResult")
        .def_readonly("v_out4", &SwapResult::v_out4)
        .def_readonly("en_ww", &SwapResult::en_ww)
        .def_readonly("en_cc", &SwapResult::en_cc)
        .def_readonly("eta_ww", &SwapResult::eta_ww)
        .def_readonly("eta_cc", &SwapResult::eta_cc)
        .def_readonly("eta_ww_raw", &SwapResult::eta_ww_raw)
        .def_readonly("eta_cc_raw", &SwapResult::eta_cc_raw)
        .def_readonly("eta_ww_shortcut", &SwapResult::eta_ww_shortcut)
        .def_readonly("eta_cc_shortcut", &SwapResult::eta_cc_shortcut)
        .def_readonly("mu_b", &SwapResult::mu_b)
        .def_readonly("mu_wb", &SwapResult::mu_wb)
        .def_readonly("mu_bc", &SwapResult::mu_bc)
        .def_readonly("certifying_state", &SwapResult::certifying_state)
        .def_readonly("certified", &SwapResult::certified)
        .def("to_json_str",
             [](const SwapResult& r) { return r.to_json().dump(); });

    m.def("site_from_output", &site_from_output);
    m.def("assemble_two_site", &assemble_two_site);
    m.def("bell_measure", &bell_measure);
    m.def("evaluate", &evaluate);

    m.def("run_sweep_file", [](const std::string& config_path) {
        const auto summary = run_sweep(RunConfig::from_file(config_path));
        nlohmann::json j = nlohmann::json::array();
        for (const auto& rec : summary.records) j.push_back(rec.to_json());
        return j.dump();
    });
}
