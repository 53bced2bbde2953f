#include "nel/separatrix.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "nel/cosine_model.hpp"
#include "nel/parallel.hpp"

namespace nel::separatrix {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Asymptotic growth a_n ~ 2^{5/6} sqrt(n), used only to seed brackets.
double seed_estimate(int n) { return std::pow(2.0, 5.0 / 6.0) * std::sqrt(static_cast<double>(n)); }

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Bisect: return "bisect";
    case Method::Backward: return "backward";
    case Method::Both: return "both";
  }
  return "unknown";
}

double classification_window(double a) { return std::max(12.0, 2.5 * std::abs(a)); }

int count_maxima(double a, const IntegratorConfig& cfg) {
  const auto traj = cosine::solve(a, classification_window(a), cfg);
  int count = 0;
  for (const auto& e : find_extrema(traj))
    if (e.kind == ExtremumKind::Max) ++count;
  return count;
}

SolutionClass classify_initial_condition(double a, const SolverConfig& cfg) {
  for (double known : cfg.known_eigenvalues) {
    if (std::abs(a - known) < cfg.sep_guard) {
      std::ostringstream os;
      os << "a=" << a << " lies within " << cfg.sep_guard << " of eigenvalue " << known;
      fail(ErrorKind::Undecidable, os.str());
    }
  }
  const double x_max = classification_window(a);
  const auto traj = cosine::solve(a, x_max, cfg.ode);

  SolutionClass cls;
  cls.x_turn = kNaN;
  for (const auto& e : find_extrema(traj)) {
    if (e.kind == ExtremumKind::Max) {
      ++cls.n_maxima;
      cls.x_turn = e.x;
    }
  }
  const int m_end = cosine::bundle_index(x_max, traj.y_back()[0]);
  const double x_mid = 0.9 * x_max;
  const int m_mid = cosine::bundle_index(x_mid, traj.at(x_mid)[0]);
  if (m_end != m_mid || m_end % 2 != 0) {
    std::ostringstream os;
    os << "bundle index for a=" << a << " not settled (m=" << m_mid << " at x=" << x_mid
       << ", m=" << m_end << " at x=" << x_max << ")";
    fail(ErrorKind::Undecidable, os.str());
  }
  cls.bundle_m = m_end;
  return cls;
}

EigenvalueRecord find_eigenvalue_bisect(int n, const SolverConfig& cfg) {
  require(n >= 1, "bisection needs n >= 1");
  auto above = [&](double a) { return count_maxima(a, cfg.ode) >= n + 1; };

  double lo = seed_estimate(n) - 1.0;
  double hi = seed_estimate(n) + 1.0;
  constexpr int kMaxExpansions = 40;
  int expansions = 0;
  while (above(lo)) {
    lo -= 0.5;
    if (++expansions > kMaxExpansions) fail(ErrorKind::BracketFailure, "lower bracket not found");
  }
  while (!above(hi)) {
    hi += 0.5;
    if (++expansions > kMaxExpansions) fail(ErrorKind::BracketFailure, "upper bracket not found");
  }
  while (hi - lo > cfg.tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (above(mid) ? hi : lo) = mid;
  }

  EigenvalueRecord rec;
  rec.n = n;
  rec.a = 0.5 * (lo + hi);
  rec.method = Method::Bisect;
  rec.residual = kNaN;
  rec.tail_m = 2 * n - 1;
  rec.a_bisect = rec.a;
  rec.a_backward = kNaN;
  return rec;
}

double default_tail_start(int n) {
  return std::max(20.0, 3.0 * std::sqrt(static_cast<double>(std::max(std::abs(n), 1))));
}

BackwardTrace trace_separatrix_backward(int n, const SolverConfig& cfg, double x_start) {
  if (x_start <= 0.0) x_start = default_tail_start(n);
  const int m = 2 * n - 1;
  const auto tail = cosine::make_tail(m);
  const auto start = cosine::asymptotic_tail_eval(tail, x_start);

  auto traj = integrate_scalar(cosine::rhs_unscaled, x_start, start.y, 0.0, cfg.ode);

  EigenvalueRecord rec;
  rec.n = n;
  rec.a = traj.y_back()[0];
  rec.method = Method::Backward;
  rec.residual = kNaN;
  rec.tail_m = m;
  rec.a_bisect = kNaN;
  rec.a_backward = rec.a;
  return {rec, std::move(traj)};
}

ScaledSeparatrix::ScaledSeparatrix(int n, const SolverConfig& cfg)
    : n_(n),
      lambda_(cosine::scaled_lambda(n)),
      scale_(cosine::scale_factor(n)),
      trace_(trace_separatrix_backward(n, cfg)) {}

double ScaledSeparatrix::z(double t) const { return trace_.trajectory.at(t * scale_)[0] / scale_; }

double ScaledSeparatrix::dz(double t) const {
  return trace_.trajectory.derivative_at(t * scale_)[0];
}

std::vector<double> ScaledSeparatrix::sample(std::span<const double> ts) const {
  std::vector<double> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(z(t));
  return out;
}

double ScaledSeparatrix::sup_deviation(const std::function<double(double)>& reference, double t_lo,
                                       double t_hi, int probes) const {
  const auto& traj = trace_.trajectory;
  const double x_lo = t_lo * scale_, x_hi = t_hi * scale_;
  double sup = 0.0;
  for (std::size_t i = 0; i < traj.step_count(); ++i) {
    const auto st = traj.step(i);
    const double a = std::min(st.x0, st.x1()), b = std::max(st.x0, st.x1());
    if (b < x_lo || a > x_hi) continue;
    for (int p = 0; p <= probes; ++p) {
      const double x = st.x0 + st.h * p / probes;
      if (x < x_lo || x > x_hi) continue;
      const double t = x / scale_;
      sup = std::max(sup, std::abs(st.eval(x)[0] / scale_ - reference(t)));
    }
  }
  return sup;
}

ScaledCurve scaled_separatrix(int n, std::span<const double> grid, const SolverConfig& cfg) {
  require(n >= 1, "scaled separatrix needs n >= 1");
  const ScaledSeparatrix sep(n, cfg);
  ScaledCurve curve;
  curve.n = n;
  curve.lambda = sep.lambda();
  curve.t.assign(grid.begin(), grid.end());
  curve.z = sep.sample(grid);
  return curve;
}

std::vector<EigenvalueRecord> eigenvalue_table(int n_min, int n_max, const SolverConfig& cfg,
                                               bool use_bisect, bool use_backward) {
  require(n_min <= n_max, "n_min must not exceed n_max");
  require(use_bisect || use_backward, "at least one method must be selected");
  const std::size_t count = static_cast<std::size_t>(n_max - n_min + 1);
  return parallel_map(count, [&](std::size_t i) {
    const int n = n_min + static_cast<int>(i);
    EigenvalueRecord rec;
    rec.n = n;
    rec.tail_m = 2 * n - 1;
    rec.a = rec.a_bisect = rec.a_backward = rec.residual = kNaN;
    const bool bisect = use_bisect && n >= 1;
    try {
      if (use_backward) rec.a_backward = trace_separatrix_backward(n, cfg).record.a;
      if (bisect) rec.a_bisect = find_eigenvalue_bisect(n, cfg).a;
    } catch (const Error& e) {
      rec.error = std::string(nel::to_string(e.kind())) + ": " + e.what();
    }
    if (use_backward && bisect) {
      rec.method = Method::Both;
      rec.a = rec.a_backward;
      rec.residual = std::abs(rec.a_bisect - rec.a_backward);
    } else if (use_backward) {
      rec.method = Method::Backward;
      rec.a = rec.a_backward;
    } else {
      rec.method = Method::Bisect;
      rec.a = rec.a_bisect;
    }
    return rec;
  });
}

}  // namespace nel::separatrix
