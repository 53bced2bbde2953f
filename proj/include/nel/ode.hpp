#pragma once

// Adaptive Dormand-Prince 5(4) integration with dense output.
//
// States are fixed-size arrays so scalar problems (the cosine model) and the
// two-component Painleve system share one code path without heap traffic per
// step. Every accepted step is kept so the trajectory can be evaluated
// anywhere inside [x0, x1] after the fact.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include "nel/error.hpp"

namespace nel {

template <std::size_t N>
using State = std::array<double, N>;

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  /// Zero selects the automatic starting step.
  double initial_step = 0.0;
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 20'000'000;
  /// Bisection iterations on the interpolant when locating an event.
  int event_bisections = 20;

  void validate() const {
    require(rel_tol > 0.0, "rel_tol must be positive");
    require(abs_tol > 0.0, "abs_tol must be positive");
    require(max_step > 0.0, "max_step must be positive");
    require(max_steps > 0, "max_steps must be positive");
    require(initial_step >= 0.0, "initial_step must be non-negative");
  }

  IntegratorConfig scaled(double factor) const {
    IntegratorConfig c = *this;
    c.rel_tol *= factor;
    c.abs_tol *= factor;
    return c;
  }
};

/// Interpolant over one accepted step. theta = (x - x0) / h.
template <std::size_t N>
struct DenseStep {
  double x0 = 0.0;
  double h = 0.0;
  State<N> y0{}, y1{}, f0{}, f1{}, r5{};

  double x1() const { return x0 + h; }

  State<N> eval(double x) const {
    const double th = (x - x0) / h;
    const double th1 = 1.0 - th;
    State<N> out;
    for (std::size_t i = 0; i < N; ++i) {
      const double ydiff = y1[i] - y0[i];
      const double bspl = h * f0[i] - ydiff;
      const double r4 = ydiff - h * f1[i] - bspl;
      out[i] = y0[i] + th * (ydiff + th1 * (bspl + th * (r4 + th1 * r5[i])));
    }
    return out;
  }

  State<N> derivative(double x) const {
    const double th = (x - x0) / h;
    const double th1 = 1.0 - th;
    State<N> out;
    for (std::size_t i = 0; i < N; ++i) {
      const double ydiff = y1[i] - y0[i];
      const double bspl = h * f0[i] - ydiff;
      const double r4 = ydiff - h * f1[i] - bspl;
      const double s = r4 + th1 * r5[i];
      const double ds = -r5[i];
      const double r = bspl + th * s;
      const double dr = s + th * ds;
      const double q = ydiff + th1 * r;
      const double dq = -r + th1 * dr;
      out[i] = (q + th * dq) / h;
    }
    return out;
  }
};

template <std::size_t N>
struct Event {
  std::function<double(double, const State<N>&)> g;
  /// +1 fires only when g rises through zero along the integration
  /// direction, -1 only when it falls, 0 on either.
  int direction = 0;
  bool terminal = true;
};

template <std::size_t N>
struct EventHit {
  std::size_t index = 0;
  double x = 0.0;
  State<N> y{};
};

template <std::size_t N>
class Trajectory;

template <std::size_t N, class Rhs>
Trajectory<N> integrate(Rhs&& rhs, double x0, const State<N>& y0, double x1,
                        const IntegratorConfig& cfg, std::span<const Event<N>> events = {},
                        const std::function<bool(const DenseStep<N>&)>& observer = {});

template <std::size_t N>
class Trajectory {
 public:
  std::size_t size() const { return xs_.size(); }
  bool empty() const { return xs_.empty(); }
  double x(std::size_t i) const { return xs_[i]; }
  const State<N>& y(std::size_t i) const { return ys_[i]; }
  const State<N>& dy(std::size_t i) const { return dys_[i]; }
  const std::vector<double>& xs() const { return xs_; }
  int direction() const { return direction_; }
  std::size_t step_count() const { return xs_.empty() ? 0 : xs_.size() - 1; }
  double x_front() const { return xs_.front(); }
  double x_back() const { return xs_.back(); }
  const State<N>& y_back() const { return ys_.back(); }
  const std::vector<EventHit<N>>& events() const { return events_; }
  /// Set when a terminal event or the step observer ended integration early.
  bool stopped_early() const { return stopped_early_; }

  DenseStep<N> step(std::size_t i) const {
    DenseStep<N> s;
    s.x0 = xs_[i];
    s.h = xs_[i + 1] - xs_[i];
    s.y0 = ys_[i];
    s.y1 = ys_[i + 1];
    s.f0 = dys_[i];
    s.f1 = dys_[i + 1];
    s.r5 = r5_[i];
    return s;
  }

  bool covers(double x) const {
    if (xs_.empty()) return false;
    const double lo = std::min(xs_.front(), xs_.back());
    const double hi = std::max(xs_.front(), xs_.back());
    return x >= lo && x <= hi;
  }

  State<N> at(double x) const { return step(locate(x)).eval(x); }
  State<N> derivative_at(double x) const { return step(locate(x)).derivative(x); }

  /// Index i of the step [x_i, x_{i+1}] containing x.
  std::size_t locate(double x) const {
    if (!covers(x)) {
      std::ostringstream os;
      os << "x=" << x << " outside trajectory range";
      fail(ErrorKind::InvalidArgument, os.str());
    }
    if (xs_.size() < 2) fail(ErrorKind::InvalidArgument, "trajectory has no steps");
    std::size_t idx;
    if (direction_ > 0) {
      auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      idx = static_cast<std::size_t>(it - xs_.begin());
    } else {
      auto it = std::upper_bound(xs_.begin(), xs_.end(), x, std::greater<double>());
      idx = static_cast<std::size_t>(it - xs_.begin());
    }
    if (idx == 0) idx = 1;
    if (idx >= xs_.size()) idx = xs_.size() - 1;
    return idx - 1;
  }

 private:
  template <std::size_t M, class Rhs>
  friend Trajectory<M> integrate(Rhs&& rhs, double x0, const State<M>& y0, double x1,
                                 const IntegratorConfig& cfg, std::span<const Event<M>> events,
                                 const std::function<bool(const DenseStep<M>&)>& observer);

  int direction_ = 1;
  bool stopped_early_ = false;
  std::vector<double> xs_;
  std::vector<State<N>> ys_, dys_, r5_;
  std::vector<EventHit<N>> events_;
};

namespace detail {

template <std::size_t N>
bool all_finite(const State<N>& s) {
  for (double v : s)
    if (!std::isfinite(v)) return false;
  return true;
}

template <std::size_t N>
double rms_norm(const State<N>& v, const State<N>& scale) {
  double acc = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double r = v[i] / scale[i];
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(N));
}

[[noreturn]] inline void non_finite(double x) {
  std::ostringstream os;
  os << "non-finite state at x=" << x;
  fail(ErrorKind::NonFiniteState, os.str());
}

}  // namespace detail

/// Integrates y' = rhs(x, y) from x0 to x1 (either direction).
///
/// Throws StepLimitExceeded when cfg.max_steps accepted+rejected steps are
/// used and NonFiniteState when a stage or the state stops being finite.
/// The observer sees each accepted step and may return false to stop.
template <std::size_t N, class Rhs>
Trajectory<N> integrate(Rhs&& rhs, double x0, const State<N>& y0, double x1,
                        const IntegratorConfig& cfg, std::span<const Event<N>> events,
                        const std::function<bool(const DenseStep<N>&)>& observer) {
  cfg.validate();
  require(x1 != x0, "integration interval is empty");
  require(std::isfinite(x0) && std::isfinite(x1), "integration bounds must be finite");
  if (!detail::all_finite(y0)) detail::non_finite(x0);

  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                   a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                   d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                   d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
  constexpr double safe = 0.9, beta = 0.04, expo1 = 0.2 - beta * 0.75;
  constexpr double facc1 = 5.0, facc2 = 0.1;

  Trajectory<N> traj;
  const double dir = x1 > x0 ? 1.0 : -1.0;
  traj.direction_ = x1 > x0 ? 1 : -1;
  const double hmax = std::min(cfg.max_step, std::abs(x1 - x0));

  auto scale_of = [&](const State<N>& a, const State<N>& b) {
    State<N> sk;
    for (std::size_t i = 0; i < N; ++i)
      sk[i] = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(a[i]), std::abs(b[i]));
    return sk;
  };

  State<N> y = y0;
  State<N> k1 = rhs(x0, y);
  if (!detail::all_finite(k1)) detail::non_finite(x0);

  double h = cfg.initial_step;
  if (h <= 0.0) {
    const State<N> sk = scale_of(y, y);
    const double dnf = detail::rms_norm(k1, sk);
    const double dny = detail::rms_norm(y, sk);
    double h0 = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
    h0 = std::min(h0, hmax);
    State<N> yt;
    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + dir * h0 * k1[i];
    const State<N> ft = rhs(x0 + dir * h0, yt);
    State<N> diff;
    for (std::size_t i = 0; i < N; ++i) diff[i] = ft[i] - k1[i];
    const double der2 = detail::all_finite(ft) ? detail::rms_norm(diff, sk) / h0 : 0.0;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / der12, 0.2);
    h = std::min({100.0 * h0, h1, hmax});
  }
  h = std::min(h, hmax);

  traj.xs_.push_back(x0);
  traj.ys_.push_back(y);
  traj.dys_.push_back(k1);

  std::vector<double> g_prev(events.size());
  for (std::size_t e = 0; e < events.size(); ++e) g_prev[e] = events[e].g(x0, y);

  double x = x0;
  double facold = 1e-4;
  bool last_rejected = false;
  std::size_t attempts = 0;

  State<N> k2, k3, k4, k5, k6, k7, ynew, ys, err;

  // Single Dormand-Prince step of signed size hs from (x, y, k1).
  auto take_step = [&](double hs) {
    for (std::size_t i = 0; i < N; ++i) ys[i] = y[i] + hs * a21 * k1[i];
    k2 = rhs(x + c2 * hs, ys);
    for (std::size_t i = 0; i < N; ++i) ys[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    k3 = rhs(x + c3 * hs, ys);
    for (std::size_t i = 0; i < N; ++i)
      ys[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = rhs(x + c4 * hs, ys);
    for (std::size_t i = 0; i < N; ++i)
      ys[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = rhs(x + c5 * hs, ys);
    for (std::size_t i = 0; i < N; ++i)
      ys[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = rhs(x + hs, ys);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    k7 = rhs(x + hs, ynew);
    for (std::size_t i = 0; i < N; ++i)
      err[i] = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
  };

  auto dense_r5 = [&](double hs) {
    State<N> r5;
    for (std::size_t i = 0; i < N; ++i)
      r5[i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    return r5;
  };

  auto commit = [&](double xnew, const State<N>& r5) {
    traj.xs_.push_back(xnew);
    traj.ys_.push_back(ynew);
    traj.dys_.push_back(k7);
    traj.r5_.push_back(r5);
    x = xnew;
    y = ynew;
    k1 = k7;
  };

  while ((x1 - x) * dir > 0.0) {
    if (++attempts > cfg.max_steps) {
      std::ostringstream os;
      os << "step limit " << cfg.max_steps << " reached at x=" << x;
      fail(ErrorKind::StepLimitExceeded, os.str());
    }
    bool final_step = false;
    if ((x + dir * h - x1) * dir >= 0.0 || std::abs(x1 - x - dir * h) < 1e-14 * std::abs(x1)) {
      h = std::abs(x1 - x);
      final_step = true;
    }
    const double hs = dir * h;
    take_step(hs);

    const bool finite = detail::all_finite(ynew) && detail::all_finite(k7) && detail::all_finite(err);
    if (!finite) {
      // Treat as a rejection first; only give up when the step is tiny.
      if (h <= 1e-14 * std::max(1.0, std::abs(x))) detail::non_finite(x);
      h *= 0.25;
      last_rejected = true;
      continue;
    }

    const double errn = detail::rms_norm(err, scale_of(y, ynew));
    const double fac11 = std::pow(std::max(errn, 1e-300), expo1);
    if (errn <= 1.0) {
      double fac = fac11 / std::pow(facold, beta);
      fac = std::max(facc2, std::min(facc1, fac / safe));
      double hnew = h / fac;
      facold = std::max(errn, 1e-4);

      const double xnew = final_step ? x1 : x + hs;
      DenseStep<N> ds;
      ds.x0 = x;
      ds.h = xnew - x;
      ds.y0 = y;
      ds.y1 = ynew;
      ds.f0 = k1;
      ds.f1 = k7;
      ds.r5 = dense_r5(hs);

      // Earliest firing terminal event inside this step, if any.
      std::optional<double> stop_at;
      std::vector<EventHit<N>> hits;
      for (std::size_t e = 0; e < events.size(); ++e) {
        const double g_new = events[e].g(xnew, ynew);
        const double g_old = g_prev[e];
        g_prev[e] = g_new;
        const bool rising = g_old < 0.0 && g_new >= 0.0;
        const bool falling = g_old > 0.0 && g_new <= 0.0;
        if (!((rising && events[e].direction >= 0) || (falling && events[e].direction <= 0)))
          continue;
        double lo = x, hi = xnew;
        double glo = g_old;
        for (int it = 0; it < cfg.event_bisections; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double gm = events[e].g(mid, ds.eval(mid));
          if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
          } else {
            hi = mid;
          }
        }
        hits.push_back({e, hi, ds.eval(hi)});
        if (events[e].terminal && (!stop_at || (hi - *stop_at) * dir < 0.0)) stop_at = hi;
      }

      if (stop_at) {
        // Redo the step exactly up to the event so the final node and its
        // interpolant are consistent.
        const double hev = *stop_at - x;
        if (std::abs(hev) > 0.0) {
          take_step(hev);
          if (!(detail::all_finite(ynew) && detail::all_finite(k7))) detail::non_finite(x);
          commit(*stop_at, dense_r5(hev));
        }
        for (const auto& hit : hits)
          if ((hit.x - *stop_at) * dir <= 0.0) traj.events_.push_back(hit);
        traj.stopped_early_ = true;
        if (observer) observer(traj.step(traj.step_count() - 1));
        break;
      }
      for (const auto& hit : hits) traj.events_.push_back(hit);

      commit(xnew, ds.r5);
      if (observer && !observer(ds)) {
        traj.stopped_early_ = true;
        break;
      }

      if (last_rejected) hnew = std::min(hnew, h);
      last_rejected = false;
      h = std::min(hnew, hmax);
    } else {
      h = h / std::min(facc1, fac11 / safe);
      last_rejected = true;
      if (h <= 1e-15 * std::max(1.0, std::abs(x))) {
        std::ostringstream os;
        os << "step size underflow at x=" << x;
        fail(ErrorKind::NonFiniteState, os.str());
      }
    }
  }
  return traj;
}

using ScalarRhs = std::function<double(double, double)>;

/// Scalar convenience wrapper around integrate<1>.
inline Trajectory<1> integrate_scalar(const ScalarRhs& rhs, double x0, double y0, double x1,
                                      const IntegratorConfig& cfg) {
  auto f = [&](double x, const State<1>& y) { return State<1>{rhs(x, y[0])}; };
  return integrate<1>(f, x0, State<1>{y0}, x1, cfg);
}

enum class ExtremumKind { Max, Min };

struct Extremum {
  double x;
  double y;
  ExtremumKind kind;
};

/// Local extrema of a scalar trajectory, ordered by increasing x. Each is
/// a sign change of y' located by bisection on the interpolant's
/// derivative to an x-resolution of `resolution`.
std::vector<Extremum> find_extrema(const Trajectory<1>& traj, double resolution = 1e-10);

}  // namespace nel
