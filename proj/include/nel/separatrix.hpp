#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nel/ode.hpp"

namespace nel::separatrix {

struct SolverConfig {
  IntegratorConfig ode{};
  /// Classification is refused within this distance of a known eigenvalue.
  double sep_guard = 1e-9;
  /// Final bracket width for bisection.
  double tol = 1e-10;
  std::vector<double> known_eigenvalues;
};

struct SolutionClass {
  int n_maxima = 0;
  int bundle_m = 0;
  /// Location of the last maximum; NaN when there is none.
  double x_turn = 0.0;
};

enum class Method { Bisect, Backward, Both };

std::string_view to_string(Method m);

struct EigenvalueRecord {
  int n = 0;
  double a = 0.0;
  Method method = Method::Backward;
  /// |bisect - backward| when both ran, NaN otherwise.
  double residual = 0.0;
  int tail_m = 0;
  double a_bisect = 0.0;
  double a_backward = 0.0;
  std::optional<std::string> error;
};

/// Forward integration window used for counting maxima.
double classification_window(double a);

/// Number of maxima of y(x) on [0, classification_window(a)].
int count_maxima(double a, const IntegratorConfig& cfg = {});

/// Maxima count and bundle index. Throws Undecidable when the bundle
/// estimator has not settled on an even value, or when a lies within
/// cfg.sep_guard of a known eigenvalue.
SolutionClass classify_initial_condition(double a, const SolverConfig& cfg = {});

/// a_n as the boundary where the maxima count jumps from n to n+1.
EigenvalueRecord find_eigenvalue_bisect(int n, const SolverConfig& cfg = {});

/// Default starting abscissa for the backward trace.
double default_tail_start(int n);

struct BackwardTrace {
  EigenvalueRecord record;
  Trajectory<1> trajectory;
};

/// Traces the n-th separatrix (tail index m = 2n - 1) from x_start down to
/// x = 0. A non-positive x_start selects default_tail_start(n).
BackwardTrace trace_separatrix_backward(int n, const SolverConfig& cfg = {}, double x_start = 0.0);

/// The n-th separatrix in scaled variables t = x/S, z = y/S with
/// S = sqrt(2n - 1/2).
class ScaledSeparatrix {
 public:
  explicit ScaledSeparatrix(int n, const SolverConfig& cfg = {});

  int n() const { return n_; }
  double lambda() const { return lambda_; }
  double scale() const { return scale_; }
  double t_max() const { return trace_.trajectory.x_front() / scale_; }
  double eigenvalue() const { return trace_.record.a; }
  const Trajectory<1>& unscaled() const { return trace_.trajectory; }

  double z(double t) const;
  double dz(double t) const;
  std::vector<double> sample(std::span<const double> ts) const;

  /// sup |z(t) - reference(t)| over [t_lo, t_hi], taken at every step node
  /// and `probes` interior points per step.
  double sup_deviation(const std::function<double(double)>& reference, double t_lo, double t_hi,
                       int probes = 8) const;

 private:
  int n_;
  double lambda_;
  double scale_;
  BackwardTrace trace_;
};

struct ScaledCurve {
  int n = 0;
  double lambda = 0.0;
  std::vector<double> t;
  std::vector<double> z;
};

ScaledCurve scaled_separatrix(int n, std::span<const double> grid, const SolverConfig& cfg = {});

/// Records for n_min..n_max. Both methods run for n >= 1, only the backward
/// trace for n <= 0. Failures are stored per record.
std::vector<EigenvalueRecord> eigenvalue_table(int n_min, int n_max, const SolverConfig& cfg = {},
                                               bool use_bisect = true, bool use_backward = true);

}  // namespace nel::separatrix
