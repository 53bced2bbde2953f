#include <cmath>
#include <complex>
#include <numbers>

#include "../common/properties.hpp"
#include "doctest.h"
#include "nel/pseries.hpp"

using namespace nel;
using namespace nel::pseries;
using std::numbers::pi;

TEST_CASE("phase reduction matches exact rational arithmetic") {
  // 3/8 and 0.375 are the same double, so both paths must agree.
  const auto a = ftau_partial_sum(0.375, 200);
  const auto b = ftau_partial_sum(3, 8, 200);
  for (int k = 0; k <= 200; ++k) CHECK(std::abs(a.coeffs[k] - b.coeffs[k]) < 1e-14);
  CHECK(reduced_phase(0.5, 3) == doctest::Approx(0.0));
  CHECK(reduced_phase(0.25, 2) == doctest::Approx(1.5));
}

TEST_CASE("coefficients are unimodular with period one in tau") {
  const auto a = ftau_partial_sum(0.3, 40);
  const auto b = ftau_partial_sum(1.3, 40);
  for (int k = 0; k <= 40; ++k) {
    CHECK(std::abs(a.coeffs[k]) == doctest::Approx(1.0));
    CHECK(std::abs(a.coeffs[k] - b.coeffs[k]) < 1e-12);
  }
}

TEST_CASE("cubic numerator of f_{1/4}") {
  const ComplexPolynomial p({1.0, {0.0, 1.0}, {0.0, -1.0}, -1.0});
  const auto r = all_roots(p);
  CHECK(std::abs(r.max_modulus() - 1.70002) < 1e-5);
  // Closed-form roots: 1 and -(1+i)/2 +- sqrt(2i - 4)/2.
  const cplx c = -0.5 * cplx(1.0, 1.0);
  const cplx d = 0.5 * std::sqrt(cplx(-4.0, 2.0));
  for (const cplx z : {cplx(1.0), c + d, c - d}) {
    double best = 1e9;
    for (const auto& w : r.roots) best = std::min(best, std::abs(w - z));
    CHECK(best < 1e-12);
  }
}

TEST_CASE("degree-seven numerator of f_{3/8}") {
  CHECK(std::abs(all_roots(ftau_partial_sum(3, 8, 7)).max_modulus() - 1.7804) < 5e-4);
}

TEST_CASE("Vieta relations and residuals") {
  for (double f : {0.5, 1.0, 2.0}) {
    const auto o = props::vieta(f);
    INFO(o.detail);
    CHECK(o.ok);
  }
}

TEST_CASE("conjugate coefficients give conjugate roots; scaling changes nothing") {
  const auto p = ftau_partial_sum(0.21, 30);
  std::vector<cplx> conj_c, scaled_c;
  for (const auto& c : p.coeffs) {
    conj_c.push_back(std::conj(c));
    scaled_c.push_back(cplx(0.0, 3.0) * c);
  }
  const auto r = all_roots(p);
  const auto rc = all_roots(ComplexPolynomial(conj_c));
  const auto rs = all_roots(ComplexPolynomial(scaled_c));
  for (const auto& z : r.roots) {
    double bc = 1e9, bs = 1e9;
    for (const auto& w : rc.roots) bc = std::min(bc, std::abs(w - std::conj(z)));
    for (const auto& w : rs.roots) bs = std::min(bs, std::abs(w - z));
    CHECK(bc < 1e-10);
    CHECK(bs < 1e-10);
  }
}

TEST_CASE("roots of z^n - 1") {
  std::vector<cplx> c(24, 0.0);
  c[0] = -1.0;
  c[23] = 1.0;
  const auto r = all_roots(ComplexPolynomial(c));
  for (const auto& z : r.roots) CHECK(std::abs(std::pow(z, 23) - 1.0) < 1e-12);
}

TEST_CASE("degree 200 converges") {
  const auto r = all_roots(ftau_partial_sum(0.378, 200));
  CHECK(r.roots.size() == 200);
  CHECK(r.max_modulus() > 1.0);
}

TEST_CASE("rho at tau = 0 is 1 (geometric series)") {
  CHECK(rho_n(0.0, 30) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("coarse scan finds the two maxima and the 1 - tau symmetry") {
  const auto scan = tau_scan(0.0, 1.0, 0.01, 30);
  REQUIRE(scan.maxima.size() == 2);
  CHECK(std::abs(scan.maxima[0].rho - scan.maxima[1].rho) < 1e-9);
  const auto sym = symmetry_report(scan);
  CHECK(sym.reflection < 1e-9);
  CHECK(sym.pairs > 50);
}

TEST_CASE("finite-window liminf stand-in") {
  const auto w = liminf_window(0.25, 40, 60);
  CHECK(std::abs(w.value - 1.70002) < 1e-4);
  CHECK(w.n_lo == 40);
  CHECK(w.n_hi == 60);
  CHECK(w.argmin >= 40);
  CHECK(w.argmin <= 60);
}

TEST_CASE("degenerate inputs") {
  CHECK_THROWS_AS(ftau_partial_sum(0.3, 0), Error);
  CHECK_THROWS_AS(ComplexPolynomial({1.0, 0.0}), Error);
  CHECK_THROWS_AS(tau_scan(0.0, 1.0, 0.0, 10), Error);
}
