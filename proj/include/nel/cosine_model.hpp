#pragma once

#include <array>
#include <vector>

#include "nel/ode.hpp"

namespace nel::cosine {

/// y'(x) = cos(pi x y).
double rhs_unscaled(double x, double y);

/// z'(t) = cos(lambda t z), the separatrix equation after rescaling both
/// variables by sqrt(2n - 1/2).
double rhs_scaled(double t, double z, double lambda);

/// lambda = (2n - 1/2) pi for the n-th separatrix.
double scaled_lambda(int n);

/// sqrt(2n - 1/2), the common scale of x and y for the n-th separatrix.
double scale_factor(int n);

/// Solution of y' = cos(pi x y), y(0) = a, integrated from 0 to x_end.
Trajectory<1> solve(double a, double x_end, const IntegratorConfig& cfg = {});

struct TaylorSeries {
  double a = 0.0;
  std::vector<double> b;  // b[n] multiplies x^n

  int order() const { return static_cast<int>(b.size()) - 1; }
  double eval(double x) const;
};

/// Taylor coefficients b_0..b_N of the solution about x = 0, generated by
/// Cauchy products on the auxiliary system u = pi x y, c = cos u, s = sin u.
TaylorSeries taylor_coefficients(double a, int order);

double taylor_eval(const TaylorSeries& series, double x);

/// Large-x series y ~ (m + 1/2)/x + sum_k c_k x^{-2k-1}, k = 1..K.
struct AsymptoticTail {
  int m = 0;
  std::array<double, 6> c{};
  int truncation = 6;

  double leading() const { return m + 0.5; }
};

AsymptoticTail make_tail(int m, int truncation = 6);

struct TailValue {
  double y;
  double dy;
};

/// Magnitudes of the terms (m+1/2)/x, c_1/x^3, ..., c_K/x^{2K+1}.
std::vector<double> tail_terms(const AsymptoticTail& tail, double x);

/// True when every term past the leading one is below a tenth of the
/// largest term before it.
bool tail_is_asymptotic(const AsymptoticTail& tail, double x);

/// Evaluates y and y' of the truncated tail. Throws TailNotAsymptotic when
/// tail_is_asymptotic(tail, x) fails.
TailValue asymptotic_tail_eval(const AsymptoticTail& tail, double x);

/// round(x y - 1/2): the bundle index m once y has settled onto a tail.
int bundle_index(double x, double y);

struct BundleFit {
  double slope = 0.0;
  double intercept = 0.0;
  int bundle_m = 0;
  std::vector<double> x;
  std::vector<double> log_diff;
};

/// Least-squares slope of ln|y1 - y2| against x^2 over [x_lo, x_hi] for the
/// solutions starting at a1 and a2. The difference is integrated as its own
/// state component so exponentially small separations stay resolved.
BundleFit bundle_decay_fit(double a1, double a2, double x_lo, double x_hi,
                           const IntegratorConfig& cfg = {}, int samples = 41);

}  // namespace nel::cosine
