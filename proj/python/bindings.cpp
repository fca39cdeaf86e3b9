#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pcwave/io.hpp"
#include "pcwave/scenario.hpp"

namespace py = pybind11;
using namespace pcwave;

namespace {

using PyMat = std::array<std::array<cplx, 2>, 2>;

PyMat to_py(const CMat2& m) {
    return {{{m.e11, m.e12}, {m.e21, m.e22}}};
}

CMat2 from_py(const PyMat& m) { return {m[0][0], m[0][1], m[1][0], m[1][1]}; }

ScenarioConfig config_from(const std::string& preset, const std::string& model,
                           const std::string& geometry, const std::string& sigma_mode,
                           int grid_points, double span_mhz, bool nln, bool plot,
                           const std::string& out_dir) {
    ScenarioConfig cfg;
    if (preset == "group_delay") cfg = ScenarioConfig::group_delay();
    else if (preset == "rabi") cfg = ScenarioConfig::rabi();
    else throw config_error("unknown preset: " + preset);
    apply_config_line(cfg, "model", model);
    apply_config_line(cfg, "geometry", geometry);
    apply_config_line(cfg, "sigma_mode", sigma_mode);
    if (grid_points > 0) cfg.grid.n_points = grid_points;
    if (span_mhz > 0) cfg.grid.span = span_mhz * 2.0 * M_PI * 1e6;
    cfg.nln = nln;
    cfg.plot = plot;
    cfg.out_dir = out_dir;
    return cfg;
}

py::dict moment_dict(const MomentSample& m) {
    py::dict d;
    d["m_aad"] = to_py(m.m_aad);
    d["m_ada"] = to_py(m.m_ada);
    d["m_aa"] = to_py(m.m_aa);
    d["m_adad"] = to_py(m.m_adad);
    d["comm1"] = m.comm1;
    d["comm2"] = m.comm2;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "quantum Langevin engine for two coupled phase-conjugated modes";

    py::register_exception<config_error>(m, "ConfigError");
    py::register_exception<numeric_error>(m, "NumericError");

    m.def("expm2", [](const PyMat& a, double s) { return to_py(expm2(from_py(a), s)); },
          py::arg("m"), py::arg("s"), "matrix exponential e^{m s} of a complex 2x2");
    m.def("sqrtm2", [](const PyMat& a) { return to_py(sqrtm2(from_py(a))); }, py::arg("m"),
          "principal square root of a complex 2x2");
    m.def("eig2", [](const PyMat& a) {
              const Eig2 e = eig2(from_py(a));
              return py::make_tuple(e.lambda1, e.lambda2, to_py(e.vectors), e.degenerate);
          },
          py::arg("m"));
    m.def("exp_moment_integral",
          [](const PyMat& a, const PyMat& c, double L) {
              return to_py(exp_moment_integral(from_py(a), from_py(c), L));
          },
          py::arg("m"), py::arg("c"), py::arg("length"));

    m.def("propagate_constant_coupling",
          [](cplx a1, cplx a2, double dk, cplx kap, double theta, const std::string& geometry,
             double L, bool nln) {
              const Geometry g =
                  geometry == "forward" ? Geometry::forward : Geometry::backward;
              const CouplingSpec spec = CouplingSpec::constants(a1, a2, dk, kap, theta, g, L);
              const ForcingCovariance cov =
                  nln ? ForcingCovariance::zero()
                      : forcing_covariance_macro(noise_matrices(spec, 0.0));
              return moment_dict(propagate_moments(spec, cov, 0.0,
                                                   nln ? NoiseMode::nln : NoiseMode::full));
          },
          py::arg("alpha1"), py::arg("alpha2"), py::arg("delta_k"), py::arg("kappa"),
          py::arg("theta"), py::arg("geometry"), py::arg("length"), py::arg("nln") = false,
          "output second moments for constant coupling coefficients at one frequency");

    m.def("run_spectra",
          [](const std::string& preset, const std::string& model, const std::string& geometry,
             const std::string& sigma_mode, int grid_points, double span_mhz, bool nln,
             bool plot, const std::string& out_dir) {
              return run_spectra(config_from(preset, model, geometry, sigma_mode, grid_points,
                                             span_mhz, nln, plot, out_dir));
          },
          py::arg("preset"), py::arg("model") = "macro", py::arg("geometry") = "backward",
          py::arg("sigma_mode") = "ground", py::arg("grid_points") = 0,
          py::arg("span_mhz") = 0.0, py::arg("nln") = false, py::arg("plot") = false,
          py::arg("out_dir") = "out");

    m.def("run_biphoton",
          [](const std::string& preset, const std::string& model, const std::string& geometry,
             const std::string& sigma_mode, int grid_points, double span_mhz, bool nln,
             bool plot, const std::string& out_dir) {
              return run_biphoton(config_from(preset, model, geometry, sigma_mode, grid_points,
                                              span_mhz, nln, plot, out_dir));
          },
          py::arg("preset"), py::arg("model") = "macro", py::arg("geometry") = "backward",
          py::arg("sigma_mode") = "ground", py::arg("grid_points") = 0,
          py::arg("span_mhz") = 0.0, py::arg("nln") = false, py::arg("plot") = false,
          py::arg("out_dir") = "out");

    m.def("validate",
          [](int grid_points, const std::string& sigma_mode, const std::string& out_dir) {
              ValidationOptions opt;
              if (grid_points > 0) opt.n_points = grid_points;
              opt.sigma_mode = sigma_mode == "full" ? SigmaMode::full : SigmaMode::ground;
              opt.out_dir = out_dir;
              const ValidationReport rep = validate_all(opt);
              py::list checks;
              for (const auto& r : rep.records) {
                  py::dict d;
                  d["name"] = r.name;
                  d["max_abs_deviation"] = r.max_abs_deviation;
                  d["tolerance"] = r.tolerance;
                  d["pass"] = r.pass;
                  d["note"] = r.note;
                  checks.append(d);
              }
              py::dict out;
              out["overall_pass"] = rep.all_pass();
              out["checks"] = checks;
              return out;
          },
          py::arg("grid_points") = 0, py::arg("sigma_mode") = "ground",
          py::arg("out_dir") = "");
}
