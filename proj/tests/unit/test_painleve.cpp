#include <cmath>

#include "../common/properties.hpp"
#include "doctest.h"
#include "nel/painleve.hpp"

using namespace nel;
using namespace nel::painleve;

TEST_CASE("Laurent coefficients follow from the ODE") {
  const LaurentSeries L(-2.0, 0.3, 12);
  CHECK(L.coefficient(2) == doctest::Approx(0.2));
  CHECK(L.coefficient(3) == doctest::Approx(-1.0 / 6.0));
  CHECK(L.coefficient(4) == doctest::Approx(0.3));
  // d_5 = 0, d_6 from d_2^2 / (6*5 - 12).
  CHECK(std::abs(L.coefficient(5)) < 1e-15);
  CHECK(L.coefficient(6) == doctest::Approx(0.04 / 18.0));
}

TEST_CASE("truncated series residual shrinks with the truncation order") {
  const LaurentSeries L(-1.0, 0.5, 10);
  // Halving s must gain at least J - 1 binary orders while the residual is
  // still above roundoff in y'' ~ 36 / s^4.
  const double r1 = std::abs(L.ode_residual(0.8));
  const double r2 = std::abs(L.ode_residual(0.4));
  CHECK(std::log2(r1 / r2) > 9.0);
  CHECK(std::abs(L.ode_residual(0.2) / L.d2y(0.2)) < 1e-13);
}

TEST_CASE("coefficient derivatives match finite differences") {
  const double x0 = -1.7, h = 0.4, e = 1e-6;
  const LaurentSeries L(x0, h, 16), Lx(x0 + e, h, 16), Lh(x0, h + e, 16);
  for (int j = 2; j <= 16; ++j) {
    CHECK(L.dcoef_dx0(j) == doctest::Approx((Lx.coefficient(j) - L.coefficient(j)) / e).epsilon(1e-4));
    CHECK(L.dcoef_dh(j) == doctest::Approx((Lh.coefficient(j) - L.coefficient(j)) / e).epsilon(1e-4));
  }
}

TEST_CASE("matching recovers a synthetic pole") {
  const LaurentSeries L(-2.3, 0.7, 20);
  const double s = 0.07;
  const auto st = L.state(s);
  const auto pole = laurent_match(-2.3 + s, st[0], st[1], -1, PainleveConfig{});
  CHECK(std::abs(pole.x0 + 2.3) < 1e-6);
  CHECK(std::abs(pole.h - 0.7) < 1e-6);
  CHECK(pole.match_residual < 1e-8);
}

TEST_CASE("matching on the far side of the pole is refused") {
  const LaurentSeries L(-2.3, 0.7, 20);
  const auto st = L.state(-0.07);
  CHECK_THROWS_AS(laurent_match(-2.37, st[0], st[1], -1, PainleveConfig{}), Error);
}

TEST_CASE("continuation through a pole reproduces the far-side series state") {
  for (double f : {0.5, 1.0, 2.0}) {
    const auto o = props::pole_round_trip(f);
    INFO(o.detail);
    CHECK(o.ok);
  }
}

TEST_CASE("fate classes on either side of the first eigenvalues") {
  const PainleveConfig cfg;
  const auto f0 = classify_fate(0.0, cfg);
  CHECK(f0.lock == Lock::PoleChain);
  CHECK(f0.pole_count == kInfinitePoles);
  const auto f2 = classify_fate(2.0, cfg);
  CHECK(f2.lock == Lock::Oscillatory);
  CHECK(f2.pole_count == 0);
  CHECK(classify_fate(5.0, cfg).lock == Lock::PoleChain);
  const auto f7 = classify_fate(7.0, cfg);
  CHECK(f7.lock == Lock::Oscillatory);
  CHECK(f7.pole_count == 1);
}

TEST_CASE("pole count is unchanged when the tolerance is halved") {
  PainleveConfig tight;
  tight.ode = tight.ode.scaled(0.5);
  for (double a : {5.0, 7.0, 9.0}) {
    const auto r1 = integrate_with_poles(a, -20.0, PainleveConfig{});
    const auto r2 = integrate_with_poles(a, -20.0, tight);
    REQUIRE(r1.poles.size() == r2.poles.size());
    for (std::size_t i = 0; i < r1.poles.size(); ++i)
      CHECK(std::abs(r1.poles[i].x0 - r2.poles[i].x0) < 1e-6);
  }
}

TEST_CASE("first two eigenvalues") {
  ScanOptions opts;
  opts.tolerance = 1e-8;
  const auto e = painleve_eigenvalues(2, PainleveConfig{}, opts);
  REQUIRE(e.size() == 2);
  CHECK(std::abs(e[0] - 0.231955) < 1e-5);
  CHECK(std::abs(e[1] - 3.980669) < 1e-5);
}

TEST_CASE("tracking asymptote starts sqrt(-x) - 1/(8 x^2)") {
  for (double x : {-20.0, -50.0}) {
    const double t = -x;
    CHECK(tracking_asymptote(x) == doctest::Approx(std::sqrt(t) - 1.0 / (8.0 * t * t)).epsilon(1e-6));
  }
}

TEST_CASE("growth constant from the reference eigenvalue list") {
  const std::vector<double> reference{0.231955,  3.980669,  6.257998,  8.075911,  9.654843,  11.078201,
                                   12.389217, 13.613878, 14.769304, 15.867511, 16.917331, 17.925488};
  const auto g = estimate_C(reference);
  CHECK(g.C == doctest::Approx(4.2829).epsilon(1e-4));
  CHECK(g.remark_value == doctest::Approx(3.4 * std::cbrt(2.0)));
}

TEST_CASE("too few extrema for an envelope fit") {
  const auto run = integrate_with_poles(2.0, -8.0, PainleveConfig{});
  CHECK_THROWS_AS(fit_oscillation_envelope(run, -8.0, -2.0), Error);
}
