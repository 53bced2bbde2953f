// Acceptance runner: one PASS/FAIL line per criterion. Exit status is
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "../common/properties.hpp"
#include "nel/cosine_model.hpp"
#include "nel/extrapolation.hpp"
#include "nel/fourier.hpp"
#include "nel/limiting_curve.hpp"
#include "nel/painleve.hpp"
#include "nel/parallel.hpp"
#include "nel/pseries.hpp"
#include "nel/separatrix.hpp"

using namespace nel;
using std::numbers::pi;

namespace {

struct Verdict {
  bool ok;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Reference intercepts, n = -3..6.
const double kIntercepts[] = {-3.231360, -2.698369, -2.032651, -1.016702, 1.602573,
                              2.388358,  2.976682,  3.467542,  3.897484,  4.284674};

// Reference Painleve I eigenvalues, n = 1..12.
const std::vector<double> kPainleve{0.231955,  3.980669,  6.257998,  8.075911,  9.654843,  11.078201,
                                    12.389217, 13.613878, 14.769304, 15.867511, 16.917331, 17.925488};

Verdict intercepts() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int n = -3; n <= 6; ++n)
    worst = std::max(worst, std::abs(separatrix::trace_separatrix_backward(n).record.a - kIntercepts[n + 3]));
  const double t = seconds_since(t0);
  std::ostringstream os;
  os << "max |a_n - reference| = " << worst << " (<= 1e-5), " << t << " s (<= 60)";
  return {worst <= 1e-5 && t <= 60.0, os.str()};
}

Verdict cross_method() {
  const auto diffs = parallel_map(10, [](std::size_t i) {
    const int n = static_cast<int>(i) + 1;
    return std::abs(separatrix::find_eigenvalue_bisect(n).a - separatrix::trace_separatrix_backward(n).record.a);
  });
  const double worst = *std::max_element(diffs.begin(), diffs.end());
  std::ostringstream os;
  os << "max |bisect - backward| over n=1..10 = " << worst << " (<= 1e-7)";
  return {worst <= 1e-7, os.str()};
}

Verdict a_constant() {
  const std::vector<double> n{125, 250, 500, 1000, 2000};
  const auto s = parallel_map(n.size(), [&](std::size_t i) {
    const int k = static_cast<int>(n[i]);
    return std::sqrt(2.0) * separatrix::trace_separatrix_backward(k).record.a / cosine::scale_factor(k);
  });
  const auto r = extrap::richardson(n, s, extrap::integer_exponents(4), 4);
  const double err = std::abs(r.limit - std::pow(2.0, 5.0 / 6.0));
  std::ostringstream os;
  os.precision(12);
  os << "A = " << r.limit << ", |A - 2^(5/6)| = " << err << " (<= 1e-5)";
  return {err <= 1e-5, os.str()};
}

Verdict limit_curve() {
  const double z0 = std::abs(limit::implicit_Z(1e-14) - std::cbrt(2.0));
  const limit::LimitOde ode;
  double sup = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double t = i / 2000.0;
    sup = std::max(sup, std::abs(ode(t) - limit::implicit_Z(t)));
  }
  const double z1 = std::abs(ode(1.0) - 1.0);
  const double dz0 = std::abs(ode.derivative(0.0));
  std::ostringstream os;
  os << "|Z(0+) - 2^(1/3)| = " << z0 << ", sup|ODE - implicit| = " << sup << ", |Z(1) - 1| = " << z1
     << ", |Z'(0)| = " << dz0;
  return {z0 <= 1e-10 && sup <= 1e-8 && z1 <= 1e-10 && dz0 <= 1e-10, os.str()};
}

Verdict alpha_identities() {
  const int N = 60;
  const auto t = limit::alpha_recursion(N, N);
  int same = 0, mixed = 0, bad = 0;
  for (int n = 1; n <= N; ++n)
    for (int k = 0; n + k <= N; ++k) {
      if ((n + k) % 2 != 0) {
        ++mixed;
        if (t.at(n, k) != 0) ++bad;
      } else {
        ++same;
        if (t.at(n, k) != limit::alpha_closed_form(n, k)) ++bad;
      }
    }
  std::ostringstream os;
  os << same << " same-parity and " << mixed << " mixed-parity entries, " << bad << " mismatches";
  return {bad == 0, os.str()};
}

Verdict eta_order() {
  const auto e50 = limit::eta_consistency_check(50, 0.5);
  const auto e100 = limit::eta_consistency_check(100, 0.5);
  const double ratio = e50.integral_residual / e100.integral_residual;
  const bool closed = e50.closed_form_mismatch <= 5.0 * e50.integral_residual &&
                      e100.closed_form_mismatch <= 5.0 * e100.integral_residual;
  std::ostringstream os;
  os << "residual ratio n=50/100 = " << ratio << " (2 +- 40%), closed-form mismatch "
     << e100.closed_form_mismatch << " vs residual " << e100.integral_residual;
  return {ratio >= 1.2 && ratio <= 2.8 && closed, os.str()};
}

Verdict limit_convergence() {
  const limit::LimitOde Z;
  auto ref = [&](double t) { return Z(t); };
  const auto devs = parallel_map(3, [&](std::size_t i) {
    const int n = i == 0 ? 10000 : (i == 1 ? 100 : 200);
    return separatrix::ScaledSeparatrix(n).sup_deviation(ref, 0.0, 0.9);
  });
  const double ratio = devs[1] / devs[2];
  std::ostringstream os;
  os << "sup dev at n=10000 = " << devs[0] << " (<= 5e-5), n=100/200 ratio = " << ratio << " (2 +- 30%)";
  return {devs[0] <= 5e-5 && ratio >= 1.4 && ratio <= 2.6, os.str()};
}

Verdict hyperasymptotics() {
  const auto fit = cosine::bundle_decay_fit(0.2, 0.4, 2.0, 4.0);
  const double rel = std::abs(fit.slope + pi) / pi;
  std::ostringstream os;
  os << "slope of ln|y1-y2| vs x^2 = " << fit.slope << " in bundle m=" << fit.bundle_m
     << ", target -pi, relative deviation " << rel << " (<= 0.02)";
  return {rel <= 0.02 && fit.bundle_m == 0, os.str()};
}

std::vector<double> g_painleve;  // shared by criteria 9 and 10

Verdict painleve_list() {
  const auto t0 = std::chrono::steady_clock::now();
  painleve::ScanOptions opts;
  opts.tolerance = 1e-8;
  g_painleve = painleve::painleve_eigenvalues(12, painleve::PainleveConfig{}, opts);
  double worst = 0.0;
  for (std::size_t i = 0; i < 12; ++i) worst = std::max(worst, std::abs(g_painleve[i] - kPainleve[i]));
  const painleve::PainleveConfig cfg;
  const int p3 = painleve::poles_before_tracking(painleve::integrate_with_poles(g_painleve[2], -30.0, cfg));
  const int p4 = painleve::poles_before_tracking(painleve::integrate_with_poles(g_painleve[3], -30.0, cfg));
  const double t = seconds_since(t0);
  std::ostringstream os;
  os << "max |a_n - reference| = " << worst << " (<= 1e-4), poles before tracking a_3: " << p3
     << ", a_4: " << p4 << " (each 1), " << t << " s (<= 300)";
  return {worst <= 1e-4 && p3 == 1 && p4 == 1 && t <= 300.0, os.str()};
}

Verdict growth_law() {
  if (g_painleve.size() < 12) return {false, "eigenvalues unavailable"};
  const auto g = painleve::estimate_C(g_painleve);
  const double rel = std::abs(g.C - 4.28373) / 4.28373;
  const bool slope_ok = std::abs(g.loglog_slope - 0.6) <= 0.02;
  std::ostringstream os;
  os << "C = " << g.C << " (4.28373 within 2%: " << (rel <= 0.02 ? "yes" : "no") << "), log-log slope n=6..12 = "
     << g.loglog_slope << " (0.6 +- 0.02: " << (slope_ok ? "yes" : "no") << ")";
  return {rel <= 0.02 && slope_ok, os.str()};
}

Verdict oscillation_law() {
  const auto run = painleve::integrate_with_poles(2.0, -60.0, painleve::PainleveConfig{});
  const auto fit = painleve::fit_oscillation_envelope(run, -60.0, -30.0);
  const double target = 0.8 * std::sqrt(2.0);
  const double rel = std::abs(fit.phase_coefficient - target) / target;
  std::ostringstream os;
  os << "envelope exponent " << fit.amplitude_exponent << " (-1/8 +- 0.02), phase coefficient "
     << fit.phase_coefficient << " vs " << target << " (rel " << rel << ", <= 0.005), " << fit.extrema_used
     << " extrema";
  return {std::abs(fit.amplitude_exponent + 0.125) <= 0.02 && rel <= 0.005, os.str()};
}

Verdict rho_values() {
  using pseries::cplx;
  const double cubic =
      pseries::all_roots(pseries::ComplexPolynomial({1.0, cplx(0, 1), cplx(0, -1), -1.0})).max_modulus();
  const double eighth = pseries::all_roots(pseries::ftau_partial_sum(3, 8, 7)).max_modulus();
  const auto scan = pseries::tau_scan(0.0, 1.0, 0.0005, 50, 2);
  const bool c_ok = std::abs(cubic - 1.70002) <= 1e-5;
  const bool e_ok = std::abs(eighth - 1.7804) <= 5e-4;
  bool v_ok = scan.maxima.size() == 2;
  bool at_a = false, at_b = false;
  std::ostringstream os;
  os << "cubic " << cubic << (c_ok ? " ok" : " off") << "; 3/8 numerator " << eighth << (e_ok ? " ok" : " off")
     << "; scan maxima";
  for (const auto& m : scan.maxima) {
    os << " (" << m.tau << ", " << m.rho << ")";
    v_ok = v_ok && std::abs(m.rho - 1.7818) <= 5e-4;
    at_a = at_a || std::abs(m.tau - 0.3780) <= 5e-4;
    at_b = at_b || std::abs(m.tau - 0.8780) <= 5e-4;
  }
  os << "; values " << (v_ok ? "ok" : "off") << ", maximum at 0.3780 " << (at_a ? "yes" : "no")
     << ", maximum at 0.8780 " << (at_b ? "yes" : "no");
  return {c_ok && e_ok && v_ok && at_a && at_b, os.str()};
}

Verdict gibbs() {
  // (2/pi) Si(pi) from the power series of Si.
  double term = pi, si = pi;
  for (int k = 1; k < 40; ++k) {
    term *= -pi * pi / ((2.0 * k) * (2.0 * k + 1.0));
    si += term / (2.0 * k + 1.0);
  }
  const double target = 2.0 / pi * si;
  const double v = fourier::gibbs_overshoot(200).value;
  std::ostringstream os;
  os << "max S_401 = " << v << ", (2/pi)Si(pi) = " << target << ", diff " << std::abs(v - target);
  return {std::abs(v - target) <= 1e-3, os.str()};
}

Verdict property_suites() {
  std::ostringstream os;
  bool ok = true;
  for (double f : {0.5, 1.0, 2.0}) {
    for (const auto& [name, check] :
         std::vector<std::pair<const char*, std::function<props::Outcome(double)>>>{
             {"ode-order", props::ode_order},
             {"ode-reversibility", props::ode_reversibility},
             {"vieta", props::vieta},
             {"tail-order", props::tail_order},
             {"pole-round-trip", props::pole_round_trip}}) {
      const auto o = check(f);
      if (!o.ok) {
        ok = false;
        os << name << "@x" << f << " failed (" << o.detail << "); ";
      }
    }
  }
  if (ok) os << "all five suites green at tolerance x0.5, x1, x2";
  return {ok, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Verdict()>>> criteria{
      {1, intercepts},        {2, cross_method},   {3, a_constant},       {4, limit_curve},
      {5, alpha_identities},  {6, eta_order},      {7, limit_convergence}, {8, hyperasymptotics},
      {9, painleve_list},     {10, growth_law},    {11, oscillation_law}, {12, rho_values},
      {13, gibbs},            {14, property_suites}};
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    if (!v.ok) ++failed;
    std::printf("%s criterion %d: %s\n", v.ok ? "PASS" : "FAIL", id, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
