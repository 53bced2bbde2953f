#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "nel/fourier.hpp"

using namespace nel::fourier;
using std::numbers::pi;

namespace {
// Si(x) from its power series.
double sine_integral(double x) {
  double term = x, sum = x;
  for (int k = 1; k < 40; ++k) {
    term *= -x * x / ((2.0 * k) * (2.0 * k + 1.0));
    sum += term / (2.0 * k + 1.0);
  }
  return sum;
}
}  // namespace

TEST_CASE("partial sums at simple points") {
  CHECK(square_wave_partial_sum(0, pi / 2) == doctest::Approx(4.0 / pi));
  CHECK(std::abs(square_wave_partial_sum(50, 0.0)) < 1e-15);
  CHECK(square_wave_partial_sum(2000, pi / 2) == doctest::Approx(1.0).epsilon(1e-3));
  const std::vector<double> xs{0.1, 1.0, 2.0};
  const auto v = fourier_partial_sum(7, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(v[i] == square_wave_partial_sum(7, xs[i]));
}

TEST_CASE("overshoot approaches (2/pi) Si(pi)") {
  const double target = 2.0 / pi * sine_integral(pi);
  CHECK(target == doctest::Approx(1.178979744).epsilon(1e-9));
  const auto o = gibbs_overshoot(200);
  CHECK(std::abs(o.value - target) < 1e-3);
  CHECK(o.x == doctest::Approx(pi / 402.0).epsilon(1e-6));
  CHECK(std::abs(gibbs_overshoot(20).value - target) > std::abs(o.value - target));
}
