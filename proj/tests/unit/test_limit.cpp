#include <cmath>

#include "doctest.h"
#include "nel/limiting_curve.hpp"

using namespace nel;
using namespace nel::limit;

TEST_CASE("limit curve endpoints") {
  CHECK(std::abs(implicit_Z(1e-12) - std::cbrt(2.0)) < 1e-10);
  CHECK(implicit_Z(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  const LimitOde ode;
  CHECK(std::abs(ode.at_zero() - std::cbrt(2.0)) < 1e-10);
  CHECK(std::abs(ode.derivative(0.0)) < 1e-10);
  CHECK(ode(1.0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("ODE and implicit forms of the limit curve agree") {
  const auto a = solve_limit_ode(201);
  const auto b = implicit_curve(201);
  double sup = 0.0;
  for (std::size_t i = 0; i < a.Z.size(); ++i) sup = std::max(sup, std::abs(a.Z[i] - b.Z[i]));
  CHECK(sup < 1e-8);
}

TEST_CASE("A equals 2^(5/6)") {
  CHECK(std::abs(compute_A() - std::pow(2.0, 5.0 / 6.0)) < 1e-10);
  CHECK(a_exact() == doctest::Approx(std::pow(2.0, 5.0 / 6.0)));
}

TEST_CASE("alpha initial values") {
  const auto t = alpha_recursion(6, 6);
  CHECK(t.at(2, 0) == 1);
  CHECK(t.at(1, 0) == 0);
  CHECK(t.at(3, 0) == 0);
  CHECK(t.at(1, 1) == mpq_class(-1, 2));
  CHECK(t.at(2, 2) == mpq_class(1, 4));
}

TEST_CASE("alpha recursion equals the closed forms exactly") {
  const int N = 60;
  const auto t = alpha_recursion(N, N);
  int checked = 0;
  for (int n = 1; n <= N; ++n)
    for (int k = 0; n + k <= N; ++k) {
      if ((n + k) % 2 != 0) {
        CHECK(t.at(n, k) == 0);
        CHECK_THROWS_AS(alpha_closed_form(n, k), Error);
        continue;
      }
      if (t.at(n, k) != alpha_closed_form(n, k)) FAIL("mismatch at (" << n << "," << k << ")");
      ++checked;
    }
  CHECK(checked > 800);
}

TEST_CASE("alpha columns carry at most unit mass") {
  const auto t = alpha_recursion(40, 38);
  for (int k = 1; k <= 38; ++k) {
    mpq_class sum = 0;
    for (int n = 1; n <= 40; ++n) sum += abs(t.at(n, k));
    CHECK(sum <= 1);
  }
}

TEST_CASE("eta residual shrinks like 1/lambda") {
  const auto e50 = eta_consistency_check(50, 0.5);
  const auto e100 = eta_consistency_check(100, 0.5);
  const double ratio = e50.integral_residual / e100.integral_residual;
  CHECK(ratio > 1.2);
  CHECK(ratio < 2.8);
  CHECK(e100.closed_form_mismatch <= 5.0 * e100.integral_residual);
}
