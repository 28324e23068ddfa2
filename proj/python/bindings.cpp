#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "qgrav/core.hpp"
#include "qgrav/errors.hpp"
#include "qgrav/experiments.hpp"
#include "qgrav/freefall.hpp"
#include "qgrav/kasevich_chu.hpp"
#include "qgrav/kernel.hpp"
#include "qgrav/optomech.hpp"
#include "qgrav/oracle/suite.hpp"

namespace py = pybind11;
using namespace qgrav;

PYBIND11_MODULE(_qgrav, m) {
  m.doc() = "Nuisance-time profiling of gravimetric Fisher information";

  static py::exception<Error> exc(m, "QgravError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      // kind name is the message prefix
      py::object err = exc;
      py::object inst = err(e.what());
      inst.attr("kind") = std::string(error_name(e.kind()));
      inst.attr("validation") = is_validation_error(e.kind());
      PyErr_SetObject(err.ptr(), inst.ptr());
    }
  });

  py::class_<FisherMatrix2>(m, "FisherMatrix2")
      .def(py::init([](double gg, double gt, double tt) { return FisherMatrix2{gg, gt, tt}; }),
           py::arg("f_gg"), py::arg("f_gt"), py::arg("f_tt"))
      .def_readwrite("f_gg", &FisherMatrix2::f_gg)
      .def_readwrite("f_gt", &FisherMatrix2::f_gt)
      .def_readwrite("f_tt", &FisherMatrix2::f_tt)
      .def("det", &FisherMatrix2::det)
      .def("is_psd", &FisherMatrix2::is_psd, py::arg("tol_rel") = 1e-9, py::arg("tol_abs") = kTolAbs)
      .def("__repr__", [](const FisherMatrix2& f) {
        return "FisherMatrix2(f_gg=" + std::to_string(f.f_gg) + ", f_gt=" + std::to_string(f.f_gt) +
               ", f_tt=" + std::to_string(f.f_tt) + ")";
      });

  m.def("schur_effective", &schur_effective, py::arg("f"));
  m.def(
      "regularized_effective",
      [](const FisherMatrix2& f, double i_t_prior) {
        return regularized_effective(f, PriorInfo::from_information(i_t_prior));
      },
      py::arg("f"), py::arg("i_t_prior"));
  m.def("correlation", &correlation, py::arg("f"));
  m.def("retention", &retention, py::arg("f"));
  m.def("crlb_variance", &crlb_variance, py::arg("f_eff"), py::arg("n_repetitions"));

  auto k = m.def_submodule("kernel");
  py::class_<kernel::KernelParams>(k, "KernelParams")
      .def(py::init([](double c0, double c1, double c2, double d0, double d1, double f_gg, double t) {
             return kernel::KernelParams{c0, c1, c2, d0, d1, f_gg, t};
           }),
           py::arg("c0"), py::arg("c1"), py::arg("c2"), py::arg("d0"), py::arg("d1"), py::arg("f_gg"),
           py::arg("t") = 0.0)
      .def_readonly("c0", &kernel::KernelParams::c0)
      .def_readonly("c1", &kernel::KernelParams::c1)
      .def_readonly("c2", &kernel::KernelParams::c2)
      .def_readonly("d0", &kernel::KernelParams::d0)
      .def_readonly("d1", &kernel::KernelParams::d1)
      .def_readonly("f_gg", &kernel::KernelParams::f_gg)
      .def_readonly("t", &kernel::KernelParams::t)
      .def("is_consistent", &kernel::KernelParams::is_consistent, py::arg("tol") = 1e-10);
  py::class_<kernel::AxisParams>(k, "AxisParams")
      .def(py::init(&kernel::AxisParams::make), py::arg("g_c"), py::arg("g_star"))
      .def_property_readonly("g_c", &kernel::AxisParams::g_c)
      .def_property_readonly("g_star", &kernel::AxisParams::g_star);
  py::class_<kernel::NormalizedCoeffs>(k, "NormalizedCoeffs")
      .def(py::init([](double a0, double a1) { return kernel::NormalizedCoeffs{a0, a1, 0.0}; }),
           py::arg("alpha0"), py::arg("alpha1"))
      .def_readonly("alpha0", &kernel::NormalizedCoeffs::alpha0)
      .def_readonly("alpha1", &kernel::NormalizedCoeffs::alpha1);
  k.def("axis_from_quadratic", &kernel::axis_from_quadratic, py::arg("p"));
  k.def("normalized_coeffs", &kernel::normalized_coeffs, py::arg("p"), py::arg("axis"));
  k.def("retention_kernel", &kernel::retention_kernel, py::arg("n"), py::arg("u"));
  k.def(
      "retention_kernel_many",
      [](const kernel::NormalizedCoeffs& n, const std::vector<double>& u) {
        std::vector<double> out;
        out.reserve(u.size());
        for (double x : u) out.push_back(kernel::retention_kernel(n, x));
        return out;
      },
      py::arg("n"), py::arg("u"));
  k.def("u_coordinate", &kernel::u_coordinate, py::arg("g"), py::arg("axis"));
  k.def("assemble", &kernel::assemble, py::arg("p"), py::arg("g"));

  auto ff = m.def_submodule("freefall");
  py::class_<freefall::GaussianProbe>(ff, "GaussianProbe")
      .def(py::init<double, double, double>(), py::arg("sigma"), py::arg("mass") = 1.0, py::arg("hbar") = 1.0)
      .def_property_readonly("sigma", &freefall::GaussianProbe::sigma);
  ff.def("qfim", &freefall::qfim, py::arg("probe"), py::arg("g"), py::arg("t"));
  ff.def("effective_info", &freefall::effective_info, py::arg("probe"), py::arg("g"), py::arg("t"));
  ff.def("lorentz_scale", &freefall::lorentz_scale, py::arg("probe"));
  ff.def("kernel_params", &freefall::kernel_params, py::arg("probe"), py::arg("t"));

  auto kc = m.def_submodule("kc");
  py::class_<kc::KCConfig>(kc, "KCConfig")
      .def(py::init([](double k0, double T, double contrast, double g, double sigma_v, long n_atoms,
                       double phi_ctrl) {
             kc::KCConfig c{k0, T, contrast, g, sigma_v, n_atoms, phi_ctrl};
             c.validate();
             return c;
           }),
           py::arg("k0") = 1.0, py::arg("T") = 1.0, py::arg("contrast") = 1.0, py::arg("g") = 0.0,
           py::arg("sigma_v") = 0.0, py::arg("n_atoms") = 1, py::arg("phi_ctrl") = 0.0)
      .def_readonly("k0", &kc::KCConfig::k0)
      .def_readonly("T", &kc::KCConfig::T)
      .def_readonly("g", &kc::KCConfig::g)
      .def_readonly("sigma_v", &kc::KCConfig::sigma_v);
  kc.def("delta_phi", &kc::delta_phi, py::arg("cfg"));
  kc.def("fringe_probability", &kc::fringe_probability, py::arg("cfg"));
  kc.def("internal_fisher", &kc::internal_fisher, py::arg("cfg"));
  kc.def(
      "internal_effective_regularized",
      [](const kc::KCConfig& c, double i_t_prior) {
        return kc::internal_effective_regularized(c, PriorInfo::from_information(i_t_prior));
      },
      py::arg("cfg"), py::arg("i_t_prior"));
  kc.def("fullstate_qfim", &kc::fullstate_qfim, py::arg("cfg"));
  kc.def("fullstate_effective", &kc::fullstate_effective, py::arg("cfg"));
  kc.def("fullstate_retention", &kc::fullstate_retention, py::arg("g"), py::arg("T"), py::arg("sigma_v"));

  auto om = m.def_submodule("optomech");
  py::class_<optomech::OptoConfig>(om, "OptoConfig")
      .def(py::init([](double kbar, double mu, double beta_r, double beta_i, double delta, double a) {
             optomech::OptoConfig c{kbar, mu, beta_r, beta_i, delta, a};
             c.validate();
             return c;
           }),
           py::arg("kbar"), py::arg("mu"), py::arg("beta_r") = 0.0, py::arg("beta_i") = 0.0,
           py::arg("delta") = 0.0, py::arg("A") = 1.0);
  om.def("zeta", [](double t) { return optomech::zeta(optomech::MechTime(t)); }, py::arg("t"));
  om.def(
      "cross_term",
      [](const optomech::OptoConfig& c, double g, double t) { return optomech::cross_term(c, g, optomech::MechTime(t)); },
      py::arg("cfg"), py::arg("g"), py::arg("t"));
  om.def("axis_params", &optomech::axis_params, py::arg("cfg"));
  om.def(
      "harvested_kernel_params",
      [](const optomech::OptoConfig& c, double t, int nq) {
        return optomech::harvested_kernel_params(c, optomech::MechTime(t), nq);
      },
      py::arg("cfg"), py::arg("t"), py::arg("n_quadrature") = 1 << 16);

  auto ex = m.def_submodule("experiments");
  ex.def("thermal_sigma_v", [](double t) { return experiments::thermal_sigma_v(t); }, py::arg("t_src"));
  ex.def("required_sigma_v", &experiments::required_sigma_v, py::arg("r0"), py::arg("t_int"));
  ex.def("localization_bound", [](double r0, double t) { return experiments::localization_bound(r0, t); },
         py::arg("r0"), py::arg("t_int"));
  ex.def("golden_numbers", [] {
    const auto n = experiments::golden_numbers();
    return py::dict(py::arg("sigma_v_2uk") = n.sigma_v_2uk, py::arg("retention_aqg") = n.retention_aqg,
                    py::arg("retention_gain") = n.retention_gain,
                    py::arg("required_aqg_half") = n.required_aqg_half,
                    py::arg("required_aqg_ninety") = n.required_aqg_ninety,
                    py::arg("required_gain_half") = n.required_gain_half,
                    py::arg("required_gain_ninety") = n.required_gain_ninety,
                    py::arg("bound_aqg_half") = n.bound_aqg_half, py::arg("bound_aqg_ninety") = n.bound_aqg_ninety,
                    py::arg("bound_gain_half") = n.bound_gain_half,
                    py::arg("bound_gain_ninety") = n.bound_gain_ninety);
  });

  m.def(
      "verify",
      [](std::uint64_t seed, int random_points, bool quick) {
        oracle::SuiteOptions o;
        o.seed = seed;
        o.random_points = random_points;
        o.include_convergence = !quick;
        std::vector<std::string> lines;
        {
          py::gil_scoped_release nogil;
          for (const auto& r : oracle::run_verification_suite(o)) lines.push_back(oracle::to_json_line(r));
        }
        return lines;
      },
      py::arg("seed") = 20260601, py::arg("random_points") = 5, py::arg("quick") = true,
      "Run the oracle cross-checks; one JSON line per record.");
}
