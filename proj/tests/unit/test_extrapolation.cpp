#include <cmath>
#include <vector>

#include "doctest.h"
#include "nel/error.hpp"
#include "nel/extrapolation.hpp"

using namespace nel;
using namespace nel::extrap;

TEST_CASE("integer exponents eliminate polynomial corrections exactly") {
  const std::vector<double> n{10, 20, 40, 80};
  std::vector<double> s;
  for (double k : n) s.push_back(3.0 + 2.0 / k - 5.0 / (k * k) + 7.0 / (k * k * k));
  const auto r = richardson(n, s, integer_exponents(3), 3);
  CHECK(std::abs(r.limit - 3.0) < 1e-12);
  CHECK(r.error_estimate < 1e-3);
  REQUIRE(r.table.size() == 4);
  CHECK(r.table[0].size() == 4);
  CHECK(r.table[3].size() == 1);
}

TEST_CASE("weights sum to one and reproduce the limit") {
  const std::vector<double> n{3, 5, 8};
  const std::vector<double> s{1.1, 1.05, 1.02};
  const auto r = richardson(n, s, integer_exponents(2), 2);
  double wsum = 0.0, dot = 0.0;
  for (std::size_t i = 0; i < r.weights.size(); ++i) {
    wsum += r.weights[i];
    dot += r.weights[i] * s[i];
  }
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dot == doctest::Approx(r.limit).epsilon(1e-12));
}

TEST_CASE("fractional exponents are eliminated too") {
  const std::vector<double> n{100, 200, 400};
  std::vector<double> s;
  for (double k : n) s.push_back(-1.5 + 0.3 * std::pow(k, -0.5) + 2.0 * std::pow(k, -1.5));
  const std::vector<double> p{0.5, 1.5};
  CHECK(std::abs(richardson(n, s, p, 2).limit + 1.5) < 1e-12);
}

TEST_CASE("three-point fit recovers a correction exponent") {
  const std::vector<double> n{10, 20, 40};
  std::vector<double> s;
  for (double k : n) s.push_back(1.0 + 4.0 * std::pow(k, -0.7));
  CHECK(fit_correction_exponent(n, s) == doctest::Approx(0.7).epsilon(1e-8));
  const std::vector<double> flat{1.0, 2.0, 1.0};
  CHECK(std::isnan(fit_correction_exponent(n, flat)));
}

TEST_CASE("bad inputs are rejected") {
  const std::vector<double> n{10, 10, 20};
  const std::vector<double> s{1, 2, 3};
  CHECK_THROWS_AS(richardson(n, s, integer_exponents(2), 2), Error);
  const std::vector<double> n2{10, 20};
  CHECK_THROWS_AS(richardson(n2, s, integer_exponents(1), 1), Error);
  const std::vector<double> n3{10, 20, 30};
  CHECK_THROWS_AS(richardson(n3, s, integer_exponents(3), 3), Error);
}

TEST_CASE("merging exponents tend to the confluent weights") {
  const std::vector<double> n{10, 11, 12};
  const std::vector<double> s{1, 2, 3};
  const std::vector<double> p1{1.0, 1.0 + 1e-6}, p2{1.0, 1.0 + 1e-8};
  CHECK(richardson(n, s, p1, 2).limit == doctest::Approx(richardson(n, s, p2, 2).limit).epsilon(1e-4));
}

TEST_CASE("near-coincident indices are ill-conditioned") {
  const std::vector<double> n{1000.0, 1000.0 + 1e-7, 1000.0 + 2e-7};
  const std::vector<double> s{1, 2, 3};
  const auto p = integer_exponents(2);
  try {
    richardson(n, s, p, 2);
    FAIL("expected IllConditioned");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IllConditioned);
  }
}
