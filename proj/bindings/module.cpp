// Python bindings for the bifurcata core library.
//
// The surface mirrors the C++ API closely: plain structs become frozen
// attribute holders, enums become strings at the boundary ("odd"/"even",
// branch kind names), and exceptions surface as ValueError/RuntimeError.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <stdexcept>

#include "bifurcata/branches.hpp"
#include "bifurcata/errors.hpp"
#include "bifurcata/nonlinearity.hpp"
#include "bifurcata/oracle.hpp"
#include "bifurcata/shooting.hpp"
#include "bifurcata/spectrum.hpp"

namespace py = pybind11;
using namespace bifurcata;

namespace {

Parity parity_from_string(const std::string& s) {
  if (s == "odd") return Parity::odd;
  if (s == "even") return Parity::even;
  throw std::invalid_argument("parity must be \"odd\" or \"even\", got \"" + s +
                              "\"");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Branches, spectra, and bifurcation diagrams of an interface-coupled "
      "two-point boundary value problem";
  m.attr("__version__") = BIFURCATA_VERSION;

  // ---- nonlinearity ----
  py::class_<Nonlinearity>(m, "Nonlinearity")
      .def_static("cubic", &Nonlinearity::cubic, "f(u) = u - u^3")
      .def_static("sine", &Nonlinearity::sine, "f(u) = sin(pi u)")
      .def_static("custom", &Nonlinearity::custom, py::arg("coefficients"),
                  "odd polynomial f(u) = sum_j c_j u^(2j+1)")
      .def("f", &Nonlinearity::f, py::arg("u"))
      .def("df", &Nonlinearity::df, py::arg("u"))
      .def("d2f", &Nonlinearity::d2f, py::arg("u"))
      .def("F", &Nonlinearity::F, py::arg("u"),
           "potential 2 * integral of f from 0 to u")
      .def_property_readonly("f_prime_0", &Nonlinearity::f_prime_0)
      .def_property_readonly("beta0", &Nonlinearity::beta0)
      .def_property_readonly("u_peak", &Nonlinearity::u_peak)
      .def_property_readonly("name", &Nonlinearity::name)
      .def_property_readonly("coefficients", &Nonlinearity::coefficients)
      .def("__repr__", [](const Nonlinearity& nl) {
        std::ostringstream os;
        os << "Nonlinearity('" << nl.name() << "')";
        return os.str();
      });

  py::class_<ConditionReport>(m, "ConditionReport")
      .def_readonly("shape_ok", &ConditionReport::shape_ok)
      .def_readonly("single_peak", &ConditionReport::single_peak)
      .def_readonly("h_decreasing", &ConditionReport::h_decreasing)
      .def_readonly("tail_nonincreasing", &ConditionReport::tail_nonincreasing)
      .def_readonly("slope_ratio_below_one",
                    &ConditionReport::slope_ratio_below_one)
      .def_readonly("margin_shape", &ConditionReport::margin_shape)
      .def_readonly("margin_peak", &ConditionReport::margin_peak)
      .def_readonly("margin_h", &ConditionReport::margin_h)
      .def_readonly("margin_tail", &ConditionReport::margin_tail)
      .def_readonly("margin_slope_ratio", &ConditionReport::margin_slope_ratio)
      .def_readonly("n_samples", &ConditionReport::n_samples)
      .def("strong", &ConditionReport::strong)
      .def("__repr__", [](const ConditionReport& r) {
        std::ostringstream os;
        os << "ConditionReport(strong=" << (r.strong() ? "True" : "False")
           << ")";
        return os.str();
      });

  m.def("check_conditions", &check_conditions, py::arg("nonlinearity"),
        py::arg("n_samples") = 400,
        "sampled verdicts on the shape conditions");

  // ---- shooting ----
  py::class_<PQ>(m, "PQ")
      .def_readonly("P", &PQ::P)
      .def_readonly("Q", &PQ::Q)
      .def_readonly("theta", &PQ::theta);

  py::class_<ShootingContext>(m, "ShootingContext")
      .def(py::init([](const Nonlinearity& nl, double a) {
             return ShootingContext(nl, a);
           }),
           py::arg("nonlinearity"), py::arg("a"))
      .def_property_readonly("beta0", &ShootingContext::beta0)
      .def(
          "solve_phi_k",
          [](const ShootingContext& sc, int k, double beta) {
            return sc.solve_phi_k(k, beta);
          },
          py::arg("k"), py::arg("beta"),
          "k-th interface phase root for the half solution at amplitude beta")
      .def(
          "lambda_branch",
          [](const ShootingContext& sc, int k, const std::string& parity,
             double beta) {
            return sc.lambda_branch(k, parity_from_string(parity), beta);
          },
          py::arg("k"), py::arg("parity"), py::arg("beta"),
          "lambda on the k-th branch of the given parity at amplitude beta")
      .def(
          "lambda_to_beta",
          [](const ShootingContext& sc, int k, const std::string& parity,
             double lam) {
            return sc.lambda_to_beta(k, parity_from_string(parity), lam);
          },
          py::arg("k"), py::arg("parity"), py::arg("lambda_"),
          "amplitude on the k-th branch where lambda is attained")
      .def(
          "eval_PQ",
          [](const ShootingContext& sc, double lam, double beta) {
            return sc.eval_PQ(lam, beta);
          },
          py::arg("lambda_"), py::arg("beta"),
          "interface values P = u + a u_x and Q = u_x of the half solution")
      .def(
          "eval_D",
          [](const ShootingContext& sc, double lam, double b1, double b2) {
            return sc.eval_D(lam, b1, b2);
          },
          py::arg("lambda_"), py::arg("beta1"), py::arg("beta2"),
          "transversality determinant of the matching system");

  // ---- branches ----
  py::class_<BranchPoint>(m, "BranchPoint")
      .def_readonly("lambda_", &BranchPoint::lambda)
      .def_readonly("beta1", &BranchPoint::beta1)
      .def_readonly("beta2", &BranchPoint::beta2)
      .def_readonly("u1", &BranchPoint::u1)
      .def_readonly("k", &BranchPoint::k)
      .def_property_readonly(
          "kind",
          [](const BranchPoint& p) {
            return std::string(branch_kind_name(p.kind));
          })
      .def_readonly("D", &BranchPoint::D)
      .def_property_readonly("morse",
                             [](const BranchPoint& p) -> py::object {
                               if (p.morse) return py::int_(*p.morse);
                               return py::none();
                             })
      .def("__repr__", [](const BranchPoint& p) {
        std::ostringstream os;
        os << "BranchPoint(lambda=" << p.lambda << ", beta1=" << p.beta1
           << ", beta2=" << p.beta2 << ")";
        return os.str();
      });

  py::class_<SolutionProfile>(m, "SolutionProfile")
      .def_readonly("x", &SolutionProfile::x)
      .def_readonly("u", &SolutionProfile::u)
      .def_readonly("ux", &SolutionProfile::ux)
      .def_readonly("u_left", &SolutionProfile::u_left)
      .def_readonly("u_right", &SolutionProfile::u_right)
      .def_readonly("ux_left", &SolutionProfile::ux_left)
      .def_readonly("ux_right", &SolutionProfile::ux_right)
      .def_readonly("lambda_", &SolutionProfile::lambda)
      .def_readonly("beta1", &SolutionProfile::beta1)
      .def_readonly("beta2", &SolutionProfile::beta2);

  py::class_<BifurcationPoint>(m, "BifurcationPoint")
      .def_readonly("k", &BifurcationPoint::k)
      .def_readonly("beta_star", &BifurcationPoint::beta_star)
      .def_readonly("phi_star", &BifurcationPoint::phi_star)
      .def_readonly("lambda_star", &BifurcationPoint::lambda_star)
      .def_readonly("u1", &BifurcationPoint::u1)
      .def_readonly("sign", &BifurcationPoint::sign)
      .def("__repr__", [](const BifurcationPoint& p) {
        std::ostringstream os;
        os << "BifurcationPoint(k=" << p.k << ", lambda_star=" << p.lambda_star
           << ", beta_star=" << p.beta_star << ")";
        return os.str();
      });

  py::class_<SecondaryBranch>(m, "SecondaryBranch")
      .def_readonly("points", &SecondaryBranch::points)
      .def_readonly("origin", &SecondaryBranch::origin);

  py::class_<BetaGrid>(m, "BetaGrid")
      .def(py::init<>())
      .def(py::init([](int n, double rim_gap, double beta_max) {
             BetaGrid g;
             g.n = n;
             g.rim_gap = rim_gap;
             g.beta_max = beta_max;
             return g;
           }),
           py::arg("n") = 200, py::arg("rim_gap") = 1e-6,
           py::arg("beta_max") = -1.0)
      .def_readwrite("n", &BetaGrid::n)
      .def_readwrite("rim_gap", &BetaGrid::rim_gap)
      .def_readwrite("beta_max", &BetaGrid::beta_max);

  m.def(
      "trace_primary",
      [](const ShootingContext& sc, int k, const std::string& parity, int sign,
         const BetaGrid& grid) {
        return trace_primary(sc, k, parity_from_string(parity), sign, grid);
      },
      py::arg("context"), py::arg("k"), py::arg("parity"),
      py::arg("sign") = 1, py::arg("grid") = BetaGrid{},
      "sweep of the k-th primary branch of the given parity");

  m.def("reconstruct_solution", &reconstruct_solution, py::arg("context"),
        py::arg("lambda_"), py::arg("beta1"), py::arg("beta2"),
        py::arg("n_grid") = 401,
        "sampled u(x) from the closed-form phase solution");

  m.def("find_primary_bifurcations", &find_primary_bifurcations,
        py::arg("context"), py::arg("lambda_max"),
        "points (n, lambda_n) where branches leave the trivial solution");

  m.def("find_secondary_bifurcations", &find_secondary_bifurcations,
        py::arg("context"), py::arg("k"), py::arg("n_scan") = 2000,
        "symmetry-breaking points on the k-th odd primary branch");

  m.def("trace_secondary", &trace_secondary, py::arg("context"),
        py::arg("origin"), py::arg("step"), py::arg("n_steps"),
        py::arg("lambda_max"),
        "pseudo-arclength continuation away from a symmetry-breaking point");

  // ---- spectrum ----
  py::class_<SpectrumResult>(m, "SpectrumResult")
      .def_readonly("eigenvalues", &SpectrumResult::eigenvalues)
      .def_readonly("errors", &SpectrumResult::errors)
      .def_readonly("morse_index", &SpectrumResult::morse_index)
      .def_readonly("degenerate", &SpectrumResult::degenerate)
      .def_readonly("zero_tolerance", &SpectrumResult::zero_tolerance)
      .def_readonly("n", &SpectrumResult::n)
      .def("__repr__", [](const SpectrumResult& s) {
        std::ostringstream os;
        os << "SpectrumResult(morse_index=" << s.morse_index
           << ", degenerate=" << (s.degenerate ? "True" : "False") << ")";
        return os.str();
      });

  m.def("compute_spectrum", &compute_spectrum, py::arg("context"),
        py::arg("lambda_"), py::arg("beta1"), py::arg("beta2"),
        py::arg("n") = 2000, py::arg("m") = 8,
        "top of the linearized spectrum around the matched solution");

  m.def("trivial_eigenvalues", &trivial_eigenvalues, py::arg("context"),
        py::arg("lambda_"), py::arg("m") = 8,
        "closed-form eigenvalues of the linearization around u == 0");

  // ---- oracle ----
  m.def("matching_residual", &matching_residual, py::arg("nonlinearity"),
        py::arg("a"), py::arg("lambda_"), py::arg("beta1"), py::arg("beta2"),
        py::arg("n_steps") = 4000,
        "interface mismatch of a candidate pair from direct integration");

  m.def("parity_names",
        []() { return std::vector<std::string>{"odd", "even"}; });

  // ---- exceptions ----
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigurationError",
                                      PyExc_ValueError);
  py::register_exception<NoRootFound>(m, "NoRootFound", PyExc_RuntimeError);
}
