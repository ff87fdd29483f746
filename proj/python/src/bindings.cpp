#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "jscatter/cli.hpp"
#include "jscatter/oracle.hpp"
#include "jscatter/scattering.hpp"
#include "jscatter/specfun.hpp"

namespace py = pybind11;
using namespace jscatter;

namespace {

PhysicalParams physical(int ell, double A, double lambda, double sigma) {
  return {ell, A, lambda, energy_from_sigma(sigma, lambda)};
}

PotentialSpec potential(const std::string& kind, double V0, double a) {
  return {potential_kind_from_string(kind), V0, a};
}

}  // namespace

PYBIND11_MODULE(_jscatter, m) {
  m.doc() = "J-matrix scattering off a regularised inverse-square potential";
  m.attr("__version__") = JSCATTER_VERSION;

  // Every library failure surfaces as jscatter.Error(message, kind).
  static PyObject* error_type = py::exception<Error>(m, "Error", PyExc_RuntimeError).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error_type, py::make_tuple(e.what(), e.kind()).ptr());
    }
  });

  py::class_<RegularizationParams>(m, "Regularization")
      .def(py::init([](double r0, double A0) { return RegularizationParams{r0, A0}; }), py::arg("r0"), py::arg("A0"))
      .def_readwrite("r0", &RegularizationParams::r0)
      .def_readwrite("A0", &RegularizationParams::A0);

  py::class_<DerivedParams>(m, "Derived")
      .def_readonly("k", &DerivedParams::k)
      .def_readonly("sigma", &DerivedParams::sigma)
      .def_readonly("energy", &DerivedParams::energy)
      .def_readonly("nu", &DerivedParams::nu)
      .def_readonly("mu", &DerivedParams::mu)
      .def_readonly("cos_theta", &DerivedParams::cos_theta)
      .def_readonly("sin_theta", &DerivedParams::sin_theta);

  py::class_<MatchingResult>(m, "Matching")
      .def_readonly("B_plus", &MatchingResult::B_plus)
      .def_readonly("B_minus", &MatchingResult::B_minus)
      .def_readonly("G_phase", &MatchingResult::G_phase)
      .def_readonly("inner_amplitude", &MatchingResult::inner_amplitude)
      .def_readonly("exp_plus_iG_check", &MatchingResult::exp_plus_iG_check);

  py::class_<SMatrixResult>(m, "SMatrix")
      .def_readonly("S", &SMatrixResult::S)
      .def_readonly("S_raw", &SMatrixResult::S_raw)
      .def_readonly("delta", &SMatrixResult::delta)
      .def_readonly("G_phase", &SMatrixResult::G_phase)
      .def_readonly("N", &SMatrixResult::N_used);

  m.def("energy_from_sigma", &energy_from_sigma, py::arg("sigma"), py::arg("lambda_") = 1.0);

  m.def(
      "derive",
      [](int ell, double A, double lambda, double sigma, const RegularizationParams& rp) {
        return derive(physical(ell, A, lambda, sigma), rp);
      },
      py::arg("ell"), py::arg("A"), py::arg("lambda_"), py::arg("sigma"), py::arg("reg"));

  m.def(
      "matching",
      [](int ell, double A, double lambda, double sigma, const RegularizationParams& rp) {
        return solve_matching(derive(physical(ell, A, lambda, sigma), rp), rp);
      },
      py::arg("ell"), py::arg("A"), py::arg("lambda_"), py::arg("sigma"), py::arg("reg"));

  m.def(
      "psi_regular",
      [](int ell, double A, double lambda, double sigma, const RegularizationParams& rp, const std::vector<double>& r) {
        const DerivedParams dp = derive(physical(ell, A, lambda, sigma), rp);
        const MatchingResult mr = solve_matching(dp, rp);
        std::vector<double> out;
        out.reserve(r.size());
        for (double x : r) out.push_back(psi_regular(mr, dp, rp, x));
        return out;
      },
      py::arg("ell"), py::arg("A"), py::arg("lambda_"), py::arg("sigma"), py::arg("reg"), py::arg("r"));

  m.def(
      "s_matrix",
      [](int ell, double A, double lambda, double sigma, const RegularizationParams& rp, const std::string& kind,
         double V0, double a, int N) {
        py::gil_scoped_release release;
        return s_matrix(physical(ell, A, lambda, sigma), rp, potential(kind, V0, a), N);
      },
      py::arg("ell"), py::arg("A"), py::arg("lambda_"), py::arg("sigma"), py::arg("reg"), py::arg("kind") = "none",
      py::arg("V0") = 0.0, py::arg("a") = 1.0, py::arg("N") = 120);

  m.def(
      "numerov_phase",
      [](int ell, double A, double lambda, double sigma, const RegularizationParams& rp, const std::string& kind,
         double V0, double a, int steps) {
        oracle::PhaseOracle o;
        {
          py::gil_scoped_release release;
          o = oracle::numerov_phase(physical(ell, A, lambda, sigma), rp, potential(kind, V0, a), steps);
        }
        return py::make_tuple(o.extracted.S, o.delta, o.extracted.G_phase);
      },
      py::arg("ell"), py::arg("A"), py::arg("lambda_"), py::arg("sigma"), py::arg("reg"), py::arg("kind") = "none",
      py::arg("V0") = 0.0, py::arg("a") = 1.0, py::arg("steps") = 1'000'000,
      "Independent Numerov integration: returns (S, delta, G_phase).");

  py::module_ sf = m.def_submodule("specfun", "Special functions");
  sf.def("gamma", &specfun::gamma_complex, py::arg("z"));
  sf.def("bessel_j", &specfun::bessel_j_real, py::arg("order"), py::arg("x"));
  sf.def("hankel_imag_order", &specfun::hankel_imag_order, py::arg("sign"), py::arg("mu"), py::arg("x"));
  sf.def(
      "hyp2f1", [](double a, double b, double c, double z) { return specfun::gauss_2f1(a, b, c, z).value; },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("z"));
  sf.def("laguerre", &specfun::laguerre, py::arg("n"), py::arg("alpha"), py::arg("x"));

  m.def(
      "run",
      [](const std::string& command, const std::string& config, int jobs, std::optional<std::string> out) {
        cli::RunOptions opt;
        opt.jobs = jobs;
        opt.out_dir = out;
        std::ostringstream log;
        int rc;
        {
          py::gil_scoped_release release;
          rc = cli::run(command, config, opt, log);
        }
        return py::make_tuple(rc, log.str());
      },
      py::arg("command"), py::arg("config"), py::arg("jobs") = 0, py::arg("out") = py::none(),
      "Run a CLI command; returns (exit_code, log).");
}
