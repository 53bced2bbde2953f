#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <string>

#include "nel/cosine_model.hpp"
#include "nel/error.hpp"
#include "nel/extrapolation.hpp"
#include "nel/fourier.hpp"
#include "nel/limiting_curve.hpp"
#include "nel/painleve.hpp"
#include "nel/pseries.hpp"
#include "nel/separatrix.hpp"

namespace py = pybind11;
using namespace nel;

namespace {

py::dict record_dict(const separatrix::EigenvalueRecord& r) {
  py::dict d;
  d["n"] = r.n;
  d["a"] = r.a;
  d["method"] = std::string(separatrix::to_string(r.method));
  d["residual"] = r.residual;
  d["tail_m"] = r.tail_m;
  d["a_bisect"] = r.a_bisect;
  d["a_backward"] = r.a_backward;
  d["error"] = r.error ? py::object(py::str(*r.error)) : py::object(py::none());
  return d;
}

separatrix::SolverConfig solver_config(double tol) {
  separatrix::SolverConfig cfg;
  cfg.tol = tol;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Compiled core of the nel package";

  static py::exception<Error> nel_error(m, "NelError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = std::string(to_string(e.kind())) + ": " + e.what();
      py::set_error(nel_error, msg.c_str());
    }
  });

  // cosine model
  m.def(
      "solve",
      [](double a, double x_end, double rel_tol, double abs_tol) {
        IntegratorConfig cfg;
        cfg.rel_tol = rel_tol;
        cfg.abs_tol = abs_tol;
        const auto tr = cosine::solve(a, x_end, cfg);
        std::vector<double> ys;
        for (std::size_t i = 0; i < tr.size(); ++i) ys.push_back(tr.y(i)[0]);
        return py::make_tuple(tr.xs(), ys);
      },
      py::arg("a"), py::arg("x_end"), py::arg("rel_tol") = 1e-10, py::arg("abs_tol") = 1e-12,
      "Integrate y' = cos(pi x y) from y(0) = a; returns (x, y) step lists.");
  m.def(
      "taylor",
      [](double a, int order) { return cosine::taylor_coefficients(a, order).b; },
      py::arg("a"), py::arg("order"), "Taylor coefficients of the solution about x = 0.");
  m.def("count_maxima", [](double a) { return separatrix::count_maxima(a); }, py::arg("a"));

  // separatrices
  m.def(
      "eigenvalues",
      [](int n_min, int n_max, const std::string& method, double tol) {
        const bool bis = method == "bisect" || method == "both";
        const bool back = method == "backward" || method == "both";
        if (!bis && !back) fail(ErrorKind::InvalidArgument, "method must be bisect, backward or both");
        py::list out;
        for (const auto& r : separatrix::eigenvalue_table(n_min, n_max, solver_config(tol), bis, back))
          out.append(record_dict(r));
        return out;
      },
      py::arg("n_min"), py::arg("n_max"), py::arg("method") = "both", py::arg("tol") = 1e-10);
  m.def(
      "scaled_separatrix",
      [](int n, const std::vector<double>& ts) { return separatrix::ScaledSeparatrix(n).sample(ts); },
      py::arg("n"), py::arg("t"), "z_n sampled at the given t values in [0, 1].");

  // limiting curve
  m.def("compute_A", &limit::compute_A);
  m.def("a_exact", &limit::a_exact);
  m.def("z0_exact", &limit::z0_exact);
  m.def("implicit_Z", &limit::implicit_Z, py::arg("t"));
  m.def(
      "limit_curve",
      [](int grid, const std::string& source) {
        const auto c = source == "implicit" ? limit::implicit_curve(grid) : limit::solve_limit_ode(grid);
        return py::make_tuple(c.t, c.Z);
      },
      py::arg("grid") = 101, py::arg("source") = "ode");
  m.def(
      "alpha",
      [](int n, int k) {
        const auto q = limit::alpha_recursion(std::max(n, 2), k).at(n, k);
        return py::make_tuple(q.get_num().get_str(), q.get_den().get_str());
      },
      py::arg("n"), py::arg("k"), "Exact table entry as (numerator, denominator) strings.");

  // extrapolation
  m.def(
      "richardson",
      [](const std::vector<double>& n, const std::vector<double>& s, std::vector<double> p, int stages) {
        if (stages < 0) stages = static_cast<int>(n.size()) - 1;
        if (p.empty()) p = extrap::integer_exponents(stages);
        const auto r = extrap::richardson(n, s, p, stages);
        py::dict d;
        d["limit"] = r.limit;
        d["stages"] = r.stages;
        d["error_estimate"] = r.error_estimate;
        d["weights"] = r.weights;
        d["table"] = r.table;
        return d;
      },
      py::arg("indices"), py::arg("values"), py::arg("exponents") = std::vector<double>{},
      py::arg("stages") = -1);

  // Painleve I
  m.def(
      "painleve_eigenvalues",
      [](int count, double y0) {
        painleve::PainleveConfig cfg;
        cfg.y0 = y0;
        py::gil_scoped_release release;
        return painleve::painleve_eigenvalues(count, cfg);
      },
      py::arg("count"), py::arg("y0") = 1.0);
  m.def(
      "painleve_fate",
      [](double a, double y0) {
        painleve::PainleveConfig cfg;
        cfg.y0 = y0;
        const auto f = painleve::analyse_fate(painleve::integrate_with_poles(a, cfg.x_min, cfg), cfg);
        py::dict d;
        d["a"] = f.a;
        d["lock"] = std::string(painleve::to_string(f.lock));
        d["pole_count"] = f.pole_count == painleve::kInfinitePoles ? py::object(py::str("infinite"))
                                                                   : py::object(py::int_(f.pole_count));
        d["poles_observed"] = f.poles_observed;
        d["lock_onset"] = f.lock_onset;
        return d;
      },
      py::arg("a"), py::arg("y0") = 1.0);
  m.def(
      "painleve_C",
      [](const std::vector<double>& eigs) {
        const auto g = painleve::estimate_C(eigs);
        py::dict d;
        d["C"] = g.C;
        d["C_error"] = g.C_error;
        d["loglog_slope"] = g.loglog_slope;
        d["correction_exponent"] = g.correction_exponent;
        d["remark_value"] = g.remark_value;
        return d;
      },
      py::arg("eigenvalues"));

  // power series
  m.def("rho_n", &pseries::rho_n, py::arg("tau"), py::arg("n"));
  m.def(
      "all_roots",
      [](const std::vector<pseries::cplx>& coeffs) {
        return pseries::all_roots(pseries::ComplexPolynomial(coeffs)).roots;
      },
      py::arg("coeffs"), "Roots of sum coeffs[k] z^k.");
  m.def(
      "tau_scan",
      [](double start, double end, double step, int n) {
        pseries::TauScan s;
        {
          py::gil_scoped_release release;
          s = pseries::tau_scan(start, end, step, n);
        }
        std::vector<double> tau, rho;
        for (const auto& p : s.points) {
          tau.push_back(p.tau);
          rho.push_back(p.rho);
        }
        std::vector<py::tuple> maxima;
        for (const auto& p : s.maxima) maxima.push_back(py::make_tuple(p.tau, p.rho));
        return py::make_tuple(tau, rho, maxima);
      },
      py::arg("start"), py::arg("end"), py::arg("step"), py::arg("n"));

  // Fourier
  m.def("fourier_partial_sum",
        [](int N, const std::vector<double>& xs) { return fourier::fourier_partial_sum(N, xs); },
        py::arg("N"), py::arg("x"));
  m.def(
      "gibbs_overshoot",
      [](int N) {
        const auto o = fourier::gibbs_overshoot(N);
        return py::make_tuple(o.x, o.value);
      },
      py::arg("N"));
}
