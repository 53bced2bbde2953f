#include "nel/cosine_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace nel::cosine {

using std::numbers::pi;

double rhs_unscaled(double x, double y) { return std::cos(pi * x * y); }

double rhs_scaled(double t, double z, double lambda) { return std::cos(lambda * t * z); }

double scaled_lambda(int n) { return (2.0 * n - 0.5) * pi; }

double scale_factor(int n) {
  require(2.0 * n - 0.5 > 0.0, "scale factor needs n >= 1");
  return std::sqrt(2.0 * n - 0.5);
}

Trajectory<1> solve(double a, double x_end, const IntegratorConfig& cfg) {
  return integrate_scalar(rhs_unscaled, 0.0, a, x_end, cfg);
}

double TaylorSeries::eval(double x) const { return taylor_eval(*this, x); }

TaylorSeries taylor_coefficients(double a, int order) {
  require(order >= 1, "Taylor order must be >= 1");
  const std::size_t n_max = static_cast<std::size_t>(order);
  std::vector<double> y(n_max + 1, 0.0), c(n_max + 1, 0.0), s(n_max + 1, 0.0);
  // du/dx coefficients: (u')_k = (k+1) u_{k+1} = (k+1) pi y_k.
  std::vector<double> du(n_max + 1, 0.0);
  y[0] = a;
  c[0] = 1.0;
  s[0] = 0.0;
  for (std::size_t n = 0; n < n_max; ++n) {
    y[n + 1] = c[n] / static_cast<double>(n + 1);
    du[n] = static_cast<double>(n + 1) * pi * y[n];
    double sc = 0.0, ss = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
      sc += s[j] * du[n - j];
      ss += c[j] * du[n - j];
    }
    c[n + 1] = -sc / static_cast<double>(n + 1);
    s[n + 1] = ss / static_cast<double>(n + 1);
  }
  return TaylorSeries{a, std::move(y)};
}

double taylor_eval(const TaylorSeries& series, double x) {
  double acc = 0.0;
  for (auto it = series.b.rbegin(); it != series.b.rend(); ++it) acc = acc * x + *it;
  return acc;
}

AsymptoticTail make_tail(int m, int truncation) {
  require(truncation >= 0 && truncation <= 6, "tail truncation must be in 0..6");
  const double M = m + 0.5;
  const double M3 = M * M * M;
  const double M5 = M3 * M * M;
  const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
  const double p2 = pi * pi, p3 = p2 * pi, p4 = p3 * pi, p5 = p4 * pi, p6 = p5 * pi;
  AsymptoticTail t;
  t.m = m;
  t.truncation = truncation;
  t.c[0] = sgn * M / pi;
  t.c[1] = 3.0 * M / p2;
  t.c[2] = sgn * (M3 / (6.0 * pi) + 15.0 * M / p3);
  t.c[3] = 8.0 * M3 / (3.0 * p2) + 105.0 * M / p4;
  t.c[4] = sgn * (3.0 * M5 / (40.0 * pi) + 36.0 * M3 / p3 + 945.0 * M / p5);
  t.c[5] = 38.0 * M5 / (15.0 * p2) + 498.0 * M3 / p4 + 10395.0 * M / p6;
  return t;
}

std::vector<double> tail_terms(const AsymptoticTail& tail, double x) {
  std::vector<double> terms;
  terms.push_back(std::abs(tail.leading() / x));
  for (int k = 1; k <= tail.truncation; ++k)
    terms.push_back(std::abs(tail.c[k - 1] * std::pow(x, -2.0 * k - 1.0)));
  return terms;
}

bool tail_is_asymptotic(const AsymptoticTail& tail, double x) {
  if (!(x > 0.0)) return false;
  const auto terms = tail_terms(tail, x);
  double largest = terms[0];
  for (std::size_t k = 1; k < terms.size(); ++k) {
    if (terms[k] >= 0.1 * largest) return false;
    largest = std::max(largest, terms[k]);
  }
  return true;
}

TailValue asymptotic_tail_eval(const AsymptoticTail& tail, double x) {
  if (!tail_is_asymptotic(tail, x)) {
    std::ostringstream os;
    os << "tail m=" << tail.m << " is not asymptotic at x=" << x;
    fail(ErrorKind::TailNotAsymptotic, os.str());
  }
  double y = tail.leading() / x;
  double dy = -tail.leading() / (x * x);
  for (int k = 1; k <= tail.truncation; ++k) {
    const double p = -2.0 * k - 1.0;
    y += tail.c[k - 1] * std::pow(x, p);
    dy += p * tail.c[k - 1] * std::pow(x, p - 1.0);
  }
  return {y, dy};
}

int bundle_index(double x, double y) { return static_cast<int>(std::lround(x * y - 0.5)); }

BundleFit bundle_decay_fit(double a1, double a2, double x_lo, double x_hi,
                           const IntegratorConfig& cfg, int samples) {
  require(x_hi > x_lo && x_lo > 0.0, "bundle window must satisfy 0 < x_lo < x_hi");
  require(samples >= 3, "need at least 3 samples");
  if (a1 == a2) fail(ErrorKind::BundleMismatch, "identical initial values have zero separation");

  // Settle each solution well past the window to read off its bundle.
  const double x_check = std::max(12.0, 2.0 * x_hi);
  const int m1 = bundle_index(x_check, solve(a1, x_check, cfg).y_back()[0]);
  const int m2 = bundle_index(x_check, solve(a2, x_check, cfg).y_back()[0]);
  if (m1 != m2) {
    std::ostringstream os;
    os << "a1=" << a1 << " settles on bundle " << m1 << " but a2=" << a2 << " on " << m2;
    fail(ErrorKind::BundleMismatch, os.str());
  }

  // State (y1, Y) with Y = y1 - y2.
  auto rhs = [](double x, const State<2>& s) {
    const double y1 = s[0], d = s[1];
    const double y2 = y1 - d;
    return State<2>{std::cos(pi * x * y1),
                    -2.0 * std::sin(0.5 * pi * x * (y1 + y2)) * std::sin(0.5 * pi * x * d)};
  };
  IntegratorConfig dcfg = cfg;
  dcfg.abs_tol = 1e-300;
  const auto traj = integrate<2>(rhs, 0.0, State<2>{a1, a1 - a2}, x_hi, dcfg);

  BundleFit fit;
  fit.bundle_m = m1;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < samples; ++i) {
    const double x = x_lo + (x_hi - x_lo) * i / (samples - 1);
    const double d = std::abs(traj.at(x)[1]);
    if (!(d > 1e-300)) {
      std::ostringstream os;
      os << "separation underflows at x=" << x;
      fail(ErrorKind::Underflow, os.str());
    }
    const double u = x * x, v = std::log(d);
    fit.x.push_back(x);
    fit.log_diff.push_back(v);
    sx += u;
    sy += v;
    sxx += u * u;
    sxy += u * v;
  }
  const double n = samples;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace nel::cosine
