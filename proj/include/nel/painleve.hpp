#pragma once

// Painleve I, y'' = y^2 + x, integrated toward negative x through its
// real double poles.

#include <string_view>
#include <vector>

#include "nel/ode.hpp"

namespace nel::painleve {

using PState = State<2>;  // (y, y')

PState painleve_rhs(double x, const PState& s);

/// Truncated Laurent expansion about a double pole x0:
///   y = 6/s^2 + sum_{j=2}^{J} d_j s^j,  s = x - x0,
/// with d_2 = -x0/10, d_3 = -1/6, d_4 = h and the rest fixed by the ODE.
class LaurentSeries {
 public:
  LaurentSeries(double x0, double h, int terms = 20);

  double x0() const { return x0_; }
  double h() const { return h_; }
  int terms() const { return terms_; }
  double coefficient(int j) const { return d_[j]; }

  double y(double s) const;
  double dy(double s) const;
  double d2y(double s) const;
  PState state(double s) const { return {y(s), dy(s)}; }
  /// y'' - y^2 - x evaluated on the truncated series.
  double ode_residual(double s) const;
  /// Largest of the last two terms relative to |y(s)|.
  double tail_ratio(double s) const;

  /// d coefficients differentiated with respect to x0 and h.
  double dcoef_dx0(int j) const { return dx0_[j]; }
  double dcoef_dh(int j) const { return dh_[j]; }

 private:
  double x0_, h_;
  int terms_;
  std::vector<double> d_, dx0_, dh_;
};

struct PoleEvent {
  double x0 = 0.0;
  double h = 0.0;
  /// max(|y_series - y| / |y|, |y'_series - y'| / |y'|) at the match point.
  double match_residual = 0.0;
  double x_match = 0.0;
  double y_match = 0.0;
};

struct PainleveConfig {
  /// Matching at |y| = 1e3 resolves h only to about 3e7 times the local
  /// relative error, so the default tolerance is tight.
  IntegratorConfig ode = default_ode();
  double y0 = 1.0;
  double y_match = 1e3;
  double y_restart = 1e3;
  int series_terms = 20;
  double x_min = -60.0;
  /// Poles inside the last tail_window units count as a continuing chain.
  double tail_window = 10.0;
  int lock_extrema = 4;

  static IntegratorConfig default_ode() {
    IntegratorConfig c;
    c.rel_tol = 1e-13;
    c.abs_tol = 1e-15;
    return c;
  }
};

/// Newton solve for (x0, h) so the Laurent series reproduces (y, v) at x.
/// `direction` is the travel direction (-1 toward negative x).
/// Throws MatchDiverged when Newton fails or the series tail is not small.
PoleEvent laurent_match(double x, double y, double v, int direction, const PainleveConfig& cfg);

struct PainleveRun {
  std::vector<Trajectory<2>> segments;
  std::vector<PoleEvent> poles;
  double a = 0.0;
  double x_end = 0.0;

  /// (x, y) at every accepted step, segments concatenated.
  std::vector<std::pair<double, double>> samples() const;
  std::size_t step_count() const;
};

/// Integrates from (0, y0, a) to x_end < 0, continuing through each double
/// pole via the matched Laurent series.
PainleveRun integrate_with_poles(double a, double x_end, const PainleveConfig& cfg);

enum class Lock { Oscillatory, PoleChain, Undecided };

std::string_view to_string(Lock lock);

constexpr int kInfinitePoles = -1;

struct FateReport {
  double a = 0.0;
  /// Finite when oscillatory, kInfinitePoles for a pole chain.
  int pole_count = 0;
  int poles_observed = 0;
  Lock lock = Lock::Undecided;
  double lock_onset = 0.0;
  /// Extrema of y used for the lock decision.
  std::vector<Extremum> extrema;

  bool same_fate(const FateReport& o) const { return lock == o.lock && pole_count == o.pole_count; }
};

/// Fate of a run already integrated to cfg.x_min. Returns Lock::Undecided
/// instead of throwing.
FateReport analyse_fate(const PainleveRun& run, const PainleveConfig& cfg);

/// Throws Undecided when neither an oscillatory lock nor a pole chain is
/// seen by cfg.x_min.
FateReport classify_fate(double a, const PainleveConfig& cfg);

struct ScanOptions {
  double a_start = 0.0;
  double step = 0.05;
  double tolerance = 1e-7;
  /// Hard stop for the forward scan.
  double a_limit = 60.0;
};

/// Fate discontinuities in increasing a, scanned from opts.a_start until
/// `count` are found.
std::vector<double> painleve_eigenvalues(int count, const PainleveConfig& cfg = {},
                                         const ScanOptions& opts = {});

/// All fate discontinuities in [a_lo, a_hi].
std::vector<double> fate_discontinuities(double a_lo, double a_hi, const PainleveConfig& cfg = {},
                                         const ScanOptions& opts = {});

/// Poles met before the run settles within `band` * sqrt(-x) of +sqrt(-x)
/// for at least `min_length` units of x.
int poles_before_tracking(const PainleveRun& run, double band = 0.05, double min_length = 3.0);

struct EnvelopeFit {
  /// p in |y + sqrt(-x)| ~ c (-x)^p at the extrema.
  double amplitude_exponent = 0.0;
  /// omega in phase ~ omega (-x)^{5/4}.
  double phase_coefficient = 0.0;
  std::size_t extrema_used = 0;
};

/// Fits the decaying oscillation about -sqrt(-x) over x in [x_lo, x_hi].
/// Throws InsufficientExtrema with fewer than 8 extrema there.
EnvelopeFit fit_oscillation_envelope(const PainleveRun& run, double x_lo = -60.0,
                                     double x_hi = -10.0);

/// Algebraic asymptotic series of the solution tracking +sqrt(-x),
/// sqrt(-x) - 1/(8x^2) + ..., summed to its smallest term (at most
/// max_terms terms).
double tracking_asymptote(double x, int max_terms = 40);

/// Slope of ln|y - tracking_asymptote(x)| + (1/8) ln(-x) against (-x)^{5/4}
/// over [x_lo, x_hi] for a run tracking +sqrt(-x).
double approach_rate(const PainleveRun& run, double x_lo, double x_hi, int samples = 40);

struct GrowthEstimate {
  double C = 0.0;
  double C_error = 0.0;
  /// Least-squares slope of ln a_n against ln n over n = 6..min(12, N).
  double loglog_slope = 0.0;
  /// First correction exponent of a_n/n^{3/5} from a three-point fit.
  double correction_exponent = 0.0;
  /// 17/5 * 2^{1/3}, reported for comparison only.
  double remark_value = 0.0;
};

/// Richardson extrapolation of a_n / n^{3/5} with exponents (1, 2) on
/// n = N-4, N-2, N.
GrowthEstimate estimate_C(const std::vector<double>& eigs);

}  // namespace nel::painleve
