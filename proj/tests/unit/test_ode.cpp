#include <cmath>
#include <numbers>

#include "../common/properties.hpp"
#include "doctest.h"
#include "nel/ode.hpp"

using namespace nel;

TEST_CASE("fixed-step runs show fifth-order convergence") {
  for (double f : {0.5, 1.0, 2.0}) {
    const auto o = props::ode_order(f);
    INFO(o.detail);
    CHECK(o.ok);
  }
}

TEST_CASE("forward then backward integration returns the start state") {
  for (double f : {0.5, 1.0, 2.0}) {
    const auto o = props::ode_reversibility(f);
    INFO(o.detail);
    CHECK(o.ok);
  }
}

TEST_CASE("dense output matches the exact solution between steps") {
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-14;
  const auto tr = integrate<2>(props::oscillator, 0.0, State<2>{0.0, 1.0}, 6.0, cfg);
  double worst = 0.0;
  for (int i = 0; i <= 600; ++i) {
    const double x = 0.01 * i;
    worst = std::max(worst, std::abs(tr.at(x)[0] - std::sin(x)));
    worst = std::max(worst, std::abs(tr.derivative_at(x)[0] - std::cos(x)));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("backward integration keeps decreasing abscissae") {
  const auto tr = integrate<2>(props::oscillator, 3.0, State<2>{std::sin(3.0), std::cos(3.0)}, 0.0, {});
  CHECK(tr.direction() == -1);
  CHECK(tr.x_back() == doctest::Approx(0.0));
  CHECK(std::abs(tr.y_back()[0]) < 1e-8);
  CHECK(std::abs(tr.at(1.5)[0] - std::sin(1.5)) < 1e-8);
}

TEST_CASE("terminal event stops at the first falling zero of sin") {
  const Event<2> zero{[](double, const State<2>& s) { return s[0]; }, -1, true};
  const std::vector<Event<2>> evs{zero};
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-14;
  cfg.event_bisections = 60;
  const auto tr = integrate<2>(props::oscillator, 0.0, State<2>{0.0, 1.0}, 10.0, cfg, evs);
  REQUIRE(tr.events().size() == 1);
  CHECK(tr.stopped_early());
  CHECK(tr.events()[0].x == doctest::Approx(std::numbers::pi).epsilon(1e-10));
}

TEST_CASE("extrema of sin are located and classified") {
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-14;
  auto rhs = [](double x, const State<1>&) { return State<1>{std::cos(x)}; };
  const auto tr = integrate<1>(rhs, 0.0, State<1>{0.0}, 13.0, cfg);
  const auto ex = find_extrema(tr);
  REQUIRE(ex.size() == 4);
  for (std::size_t k = 0; k < ex.size(); ++k) {
    CHECK(ex[k].x == doctest::Approx(std::numbers::pi * (k + 0.5)).epsilon(1e-9));
    CHECK((ex[k].kind == ExtremumKind::Max) == (k % 2 == 0));
  }
}

TEST_CASE("finite-time blow-up is reported as an error") {
  auto rhs = [](double, const State<1>& y) { return State<1>{y[0] * y[0]}; };
  IntegratorConfig cfg;
  cfg.max_steps = 100000;
  CHECK_THROWS_AS(integrate<1>(rhs, 0.0, State<1>{1.0}, 2.0, cfg), Error);
}

TEST_CASE("invalid configuration is rejected") {
  IntegratorConfig cfg;
  cfg.rel_tol = -1.0;
  CHECK_THROWS_AS(integrate<2>(props::oscillator, 0.0, State<2>{0.0, 1.0}, 1.0, cfg), Error);
  CHECK_THROWS_AS(integrate<2>(props::oscillator, 1.0, State<2>{0.0, 1.0}, 1.0, {}), Error);
}
