#include "nel/painleve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nel/extrapolation.hpp"
#include "nel/parallel.hpp"

namespace nel::painleve {

PState painleve_rhs(double x, const PState& s) { return {s[1], s[0] * s[0] + x}; }

LaurentSeries::LaurentSeries(double x0, double h, int terms)
    : x0_(x0), h_(h), terms_(terms), d_(terms + 1, 0.0), dx0_(terms + 1, 0.0),
      dh_(terms + 1, 0.0) {
  require(terms >= 4, "Laurent series needs at least four terms");
  d_[2] = -x0 / 10.0;
  dx0_[2] = -0.1;
  d_[3] = -1.0 / 6.0;
  d_[4] = h;
  dh_[4] = 1.0;
  for (int k = 5; k <= terms; ++k) {
    double q = 0.0, qx = 0.0, qh = 0.0;
    for (int i = 2; i <= k - 4; ++i) {
      const int j = k - 2 - i;
      q += d_[i] * d_[j];
      qx += dx0_[i] * d_[j] + d_[i] * dx0_[j];
      qh += dh_[i] * d_[j] + d_[i] * dh_[j];
    }
    const double den = k * (k - 1.0) - 12.0;
    d_[k] = q / den;
    dx0_[k] = qx / den;
    dh_[k] = qh / den;
  }
}

double LaurentSeries::y(double s) const {
  double p = 0.0;
  for (int j = terms_; j >= 2; --j) p = p * s + d_[j];
  return 6.0 / (s * s) + p * s * s;
}

double LaurentSeries::dy(double s) const {
  double p = 0.0;
  for (int j = terms_; j >= 2; --j) p = p * s + j * d_[j];
  return -12.0 / (s * s * s) + p * s;
}

double LaurentSeries::d2y(double s) const {
  double p = 0.0;
  for (int j = terms_; j >= 2; --j) p = p * s + j * (j - 1.0) * d_[j];
  return 36.0 / (s * s * s * s) + p;
}

double LaurentSeries::ode_residual(double s) const {
  const double v = y(s);
  return d2y(s) - v * v - (x0_ + s);
}

double LaurentSeries::tail_ratio(double s) const {
  const double a = std::abs(d_[terms_] * std::pow(s, terms_));
  const double b = std::abs(d_[terms_ - 1] * std::pow(s, terms_ - 1));
  return std::max(a, b) / std::abs(y(s));
}

PoleEvent laurent_match(double x, double y, double v, int direction, const PainleveConfig& cfg) {
  require(direction == 1 || direction == -1, "direction must be +1 or -1");
  if (!(y > 0.0 && y * v * direction > 0.0)) {
    std::ostringstream os;
    os << "state (y=" << y << ", y'=" << v << ") at x=" << x << " is not approaching a pole";
    fail(ErrorKind::MatchDiverged, os.str());
  }
  double x0 = x + 2.0 * y / v;
  double h = 0.0;
  double res = 1.0;
  for (int it = 0; it < 60; ++it) {
    const LaurentSeries L(x0, h, cfg.series_terms);
    const double s = x - x0;
    const double f1 = (L.y(s) - y) / std::abs(y);
    const double f2 = (L.dy(s) - v) / std::abs(v);
    res = std::max(std::abs(f1), std::abs(f2));

    double sx = 0.0, sh = 0.0, tx = 0.0, th = 0.0;
    for (int j = L.terms(); j >= 2; --j) {
      sx = sx * s + L.dcoef_dx0(j);
      sh = sh * s + L.dcoef_dh(j);
      tx = tx * s + j * L.dcoef_dx0(j);
      th = th * s + j * L.dcoef_dh(j);
    }
    const double j11 = (-L.dy(s) + sx * s * s) / std::abs(y);
    const double j12 = sh * s * s / std::abs(y);
    const double j21 = (-L.d2y(s) + tx * s) / std::abs(v);
    const double j22 = th * s / std::abs(v);
    const double det = j11 * j22 - j12 * j21;
    if (!std::isfinite(det) || det == 0.0) break;
    const double dx = (f1 * j22 - f2 * j12) / det;
    const double dh = (j11 * f2 - j21 * f1) / det;
    x0 -= dx;
    h -= dh;
    if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(x0)) &&
        std::abs(dh) <= 1e-9 * std::max(1.0, std::abs(h)))
      break;
  }
  const LaurentSeries L(x0, h, cfg.series_terms);
  const double s = x - x0;
  res = std::max(std::abs(L.y(s) - y) / std::abs(y), std::abs(L.dy(s) - v) / std::abs(v));
  const double tail = L.tail_ratio(s);
  if (!std::isfinite(res) || res > 1e-8 || tail > 1e-12 || s * direction >= 0.0) {
    std::ostringstream os;
    os << "Laurent match at x=" << x << " failed (residual " << res << ", tail " << tail << ")";
    fail(ErrorKind::MatchDiverged, os.str());
  }
  return {x0, h, res, x, y};
}

std::vector<std::pair<double, double>> PainleveRun::samples() const {
  std::vector<std::pair<double, double>> out;
  for (const auto& seg : segments)
    for (std::size_t i = 0; i < seg.size(); ++i) out.emplace_back(seg.x(i), seg.y(i)[0]);
  return out;
}

std::size_t PainleveRun::step_count() const {
  std::size_t n = 0;
  for (const auto& seg : segments) n += seg.step_count();
  return n;
}

PainleveRun integrate_with_poles(double a, double x_end, const PainleveConfig& cfg) {
  require(x_end < 0.0, "x_end must be negative");
  require(cfg.y_match > 0.0 && cfg.y_restart > 0.0, "pole thresholds must be positive");
  PainleveRun run;
  run.a = a;
  run.x_end = x_end;
  const int dir = -1;

  double x = 0.0;
  PState s{cfg.y0, a};
  double threshold = cfg.y_match;
  double restart = cfg.y_restart;
  while (x > x_end) {
    Event<2> trigger{[threshold](double, const PState& st) { return st[0] - threshold; }, 1, true};
    const std::span<const Event<2>> events(&trigger, 1);
    auto seg = integrate<2>(painleve_rhs, x, s, x_end, cfg.ode, events);
    const bool hit = seg.stopped_early();
    const double xe = seg.x_back();
    const PState se = seg.y_back();
    run.segments.push_back(std::move(seg));
    if (!hit) break;

    PoleEvent pole;
    try {
      pole = laurent_match(xe, se[0], se[1], dir, cfg);
    } catch (const Error& e) {
      // Move closer to the pole, where the series converges faster.
      if (e.kind() != ErrorKind::MatchDiverged || threshold >= 64.0 * cfg.y_match) throw;
      threshold *= 4.0;
      restart *= 4.0;
      x = xe;
      s = se;
      continue;
    }
    if (!run.poles.empty() && !(pole.x0 < run.poles.back().x0)) {
      std::ostringstream os;
      os << "pole at " << pole.x0 << " is not beyond the previous one";
      fail(ErrorKind::MatchDiverged, os.str());
    }
    run.poles.push_back(pole);
    const LaurentSeries L(pole.x0, pole.h, cfg.series_terms);
    const double delta = std::sqrt(6.0 / restart);
    x = pole.x0 + dir * delta;
    s = L.state(dir * delta);
    threshold = cfg.y_match;
    restart = cfg.y_restart;
  }
  return run;
}

std::string_view to_string(Lock lock) {
  switch (lock) {
    case Lock::Oscillatory: return "oscillatory";
    case Lock::PoleChain: return "pole_chain";
    case Lock::Undecided: break;
  }
  return "undecided";
}

namespace {

// Extrema of d(x) = y + sqrt(-x) for x below x_cut, in integration order.
std::vector<Extremum> offset_extrema(const PainleveRun& run, double x_cut = -0.5) {
  std::vector<Extremum> out;
  auto dprime = [](double x, const PState& st) { return st[1] - 0.5 / std::sqrt(-x); };
  for (const auto& seg : run.segments) {
    for (std::size_t i = 0; i + 1 < seg.size(); ++i) {
      double xa = seg.x(i), xb = seg.x(i + 1);
      if (xa > x_cut) {
        if (xb > x_cut) continue;
        xa = x_cut;
      }
      const auto ds = seg.step(i);
      double ga = dprime(xa, ds.eval(xa));
      const double gb = dprime(xb, seg.y(i + 1));
      if (ga == 0.0 || (ga < 0.0) == (gb < 0.0)) continue;
      double lo = xa, hi = xb;
      for (int it = 0; it < 60 && std::abs(hi - lo) > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = dprime(mid, ds.eval(mid));
        if ((gm < 0.0) == (ga < 0.0)) {
          lo = mid;
          ga = gm;
        } else {
          hi = mid;
        }
      }
      const double xm = 0.5 * (lo + hi);
      const PState st = ds.eval(xm);
      const double curvature = st[0] * st[0] + xm - 0.25 * std::pow(-xm, -1.5);
      out.push_back({xm, st[0] + std::sqrt(-xm),
                     curvature > 0.0 ? ExtremumKind::Min : ExtremumKind::Max});
    }
  }
  return out;
}

const Trajectory<2>* segment_at(const PainleveRun& run, double x) {
  for (const auto& seg : run.segments)
    if (seg.covers(x)) return &seg;
  return nullptr;
}

double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

FateReport analyse_fate(const PainleveRun& run, const PainleveConfig& cfg) {
  FateReport rep;
  rep.a = run.a;
  rep.poles_observed = static_cast<int>(run.poles.size());
  rep.extrema = offset_extrema(run);
  const auto& ex = rep.extrema;
  const double last_pole = run.poles.empty() ? 0.0 : run.poles.back().x0;

  // Longest run of straddling extrema with shrinking envelope that reaches
  // the end of the integration, walking backward from the last extremum.
  auto straddles = [](const Extremum& e) {
    return e.kind == ExtremumKind::Max ? e.y > 0.0 : e.y < 0.0;
  };
  std::size_t start = ex.size();
  for (std::size_t k = ex.size(); k-- > 0;) {
    const Extremum& e = ex[k];
    if (!straddles(e)) break;
    if (!run.poles.empty() && last_pole < e.x) break;
    if (k + 1 < ex.size() && ex[k + 1].kind == e.kind) break;
    if (k + 2 < ex.size() && !(std::abs(ex[k + 2].y) < std::abs(e.y))) break;
    start = k;
  }
  const std::size_t length = ex.size() - start;
  if (length >= static_cast<std::size_t>(cfg.lock_extrema) &&
      ex.back().x < run.x_end + cfg.tail_window) {
    rep.lock = Lock::Oscillatory;
    rep.lock_onset = ex[start].x;
    rep.pole_count = rep.poles_observed;
  } else if (!run.poles.empty() && last_pole < run.x_end + cfg.tail_window) {
    rep.lock = Lock::PoleChain;
    rep.pole_count = kInfinitePoles;
  } else {
    rep.lock = Lock::Undecided;
    rep.pole_count = rep.poles_observed;
  }
  return rep;
}

FateReport classify_fate(double a, const PainleveConfig& cfg) {
  const auto run = integrate_with_poles(a, cfg.x_min, cfg);
  auto rep = analyse_fate(run, cfg);
  if (rep.lock == Lock::Undecided) {
    std::ostringstream os;
    os.precision(17);
    os << "fate of a=" << a << " undecided by x=" << cfg.x_min << " (" << rep.poles_observed
       << " poles); widen x_min";
    fail(ErrorKind::Undecided, os.str());
  }
  return rep;
}

namespace {

double bisect_fate(double lo, double hi, FateReport flo, const PainleveConfig& cfg, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const auto fm = classify_fate(mid, cfg);
    if (fm.same_fate(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> bisect_all(const std::vector<double>& grid, const std::vector<FateReport>& fates,
                               const PainleveConfig& cfg, double tol) {
  std::vector<std::size_t> jumps;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!fates[i].same_fate(fates[i + 1])) jumps.push_back(i);
  return parallel_map(jumps.size(), [&](std::size_t j) {
    const std::size_t i = jumps[j];
    return bisect_fate(grid[i], grid[i + 1], fates[i], cfg, tol);
  });
}

}  // namespace

std::vector<double> fate_discontinuities(double a_lo, double a_hi, const PainleveConfig& cfg,
                                         const ScanOptions& opts) {
  require(a_hi > a_lo, "scan interval is empty");
  require(opts.step > 0.0 && opts.tolerance > 0.0, "scan step and tolerance must be positive");
  const auto n = static_cast<std::size_t>(std::ceil((a_hi - a_lo) / opts.step)) + 1;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = std::min(a_hi, a_lo + i * opts.step);
  const auto fates = parallel_map(n, [&](std::size_t i) { return classify_fate(grid[i], cfg); });
  return bisect_all(grid, fates, cfg, opts.tolerance);
}

std::vector<double> painleve_eigenvalues(int count, const PainleveConfig& cfg,
                                         const ScanOptions& opts) {
  require(count >= 1 && count <= 20, "count must be in 1..20");
  require(opts.step > 0.0 && opts.tolerance > 0.0, "scan step and tolerance must be positive");
  std::vector<double> grid{opts.a_start};
  std::vector<FateReport> fates{classify_fate(opts.a_start, cfg)};
  std::size_t jumps = 0;
  constexpr std::size_t chunk = 64;
  while (jumps < static_cast<std::size_t>(count)) {
    const double base = grid.back();
    if (base >= opts.a_limit) {
      std::ostringstream os;
      os << "found " << jumps << " of " << count << " eigenvalues below a=" << opts.a_limit;
      fail(ErrorKind::Undecided, os.str());
    }
    auto next = parallel_map(chunk, [&](std::size_t i) {
      return classify_fate(base + (i + 1) * opts.step, cfg);
    });
    for (std::size_t i = 0; i < chunk; ++i) {
      grid.push_back(base + (i + 1) * opts.step);
      if (!fates.back().same_fate(next[i])) ++jumps;
      fates.push_back(std::move(next[i]));
      if (jumps >= static_cast<std::size_t>(count)) break;
    }
  }
  auto eigs = bisect_all(grid, fates, cfg, opts.tolerance);
  eigs.resize(count);
  return eigs;
}

int poles_before_tracking(const PainleveRun& run, double band, double min_length) {
  double stretch_start = 1.0;  // sentinel: not inside the band
  for (const auto& seg : run.segments) {
    for (std::size_t i = 0; i < seg.size(); ++i) {
      const double x = seg.x(i);
      if (x >= 0.0) continue;
      const double r = std::sqrt(-x);
      const bool inside = std::abs(seg.y(i)[0] - r) <= band * r;
      if (!inside) {
        stretch_start = 1.0;
        continue;
      }
      if (stretch_start > 0.0) stretch_start = x;
      if (stretch_start - x >= min_length) {
        int count = 0;
        for (const auto& p : run.poles)
          if (p.x0 > stretch_start) ++count;
        return count;
      }
    }
  }
  return -1;
}

EnvelopeFit fit_oscillation_envelope(const PainleveRun& run, double x_lo, double x_hi) {
  require(x_lo < x_hi && x_hi < 0.0, "envelope window must lie in x < 0");
  std::vector<Extremum> used;
  for (const auto& e : offset_extrema(run))
    if (e.x >= x_lo && e.x <= x_hi) used.push_back(e);
  if (used.size() < 8) {
    std::ostringstream os;
    os << used.size() << " extrema in [" << x_lo << ", " << x_hi << "], need 8";
    fail(ErrorKind::InsufficientExtrema, os.str());
  }
  std::vector<double> lx, ld, k, u;
  for (std::size_t i = 0; i < used.size(); ++i) {
    lx.push_back(std::log(-used[i].x));
    ld.push_back(std::log(std::abs(used[i].y)));
    k.push_back(static_cast<double>(i));
    u.push_back(std::pow(-used[i].x, 1.25));
  }
  EnvelopeFit fit;
  fit.amplitude_exponent = slope(lx, ld);
  fit.phase_coefficient = std::numbers::pi / slope(k, u);
  fit.extrema_used = used.size();
  return fit;
}

double tracking_asymptote(double x, int max_terms) {
  require(x < 0.0 && max_terms >= 1, "tracking asymptote needs x < 0");
  // y = sum_k c_k t^{1/2 - 5k/2}, t = -x, substituted into y_tt = y^2 - t.
  // The series diverges; summation stops before the smallest term.
  const double t = -x;
  const double step = std::pow(t, -2.5);
  std::vector<double> c{1.0};
  double sum = 1.0, power = 1.0, last = 1.0;
  for (int n = 1; n < max_terms; ++n) {
    double cross = 0.0;
    for (int i = 1; i < n; ++i) cross += c[i] * c[n - i];
    const double e = 0.5 - 2.5 * (n - 1);
    c.push_back((c[n - 1] * e * (e - 1.0) - cross) / 2.0);
    power *= step;
    const double term = c[n] * power;
    if (std::abs(term) >= last) break;
    sum += term;
    last = std::abs(term);
  }
  return std::sqrt(t) * sum;
}

double approach_rate(const PainleveRun& run, double x_lo, double x_hi, int samples) {
  require(x_lo < x_hi && x_hi < 0.0 && samples >= 2, "approach window must lie in x < 0");
  std::vector<double> u, f;
  for (int i = 0; i < samples; ++i) {
    const double x = x_hi + (x_lo - x_hi) * i / (samples - 1.0);
    const auto* seg = segment_at(run, x);
    if (!seg) fail(ErrorKind::InvalidArgument, "approach window not covered by the run");
    const double y = seg->at(x)[0];
    u.push_back(std::pow(-x, 1.25));
    f.push_back(std::log(std::abs(y - tracking_asymptote(x))) + 0.125 * std::log(-x));
  }
  return slope(u, f);
}

GrowthEstimate estimate_C(const std::vector<double>& eigs) {
  const int N = static_cast<int>(eigs.size());
  require(N >= 8, "estimate_C needs at least 8 eigenvalues");
  GrowthEstimate g;
  auto scaled = [&](int n) { return eigs[n - 1] / std::pow(n, 0.6); };
  const std::vector<double> idx{double(N - 4), double(N - 2), double(N)};
  const std::vector<double> val{scaled(N - 4), scaled(N - 2), scaled(N)};
  const auto p = extrap::integer_exponents(2);
  const auto r = extrap::richardson(idx, val, p, 2);
  g.C = r.limit;
  g.C_error = r.error_estimate;
  g.correction_exponent = extrap::fit_correction_exponent(idx, val);

  std::vector<double> ln_n, ln_a;
  for (int n = 6; n <= std::min(12, N); ++n) {
    ln_n.push_back(std::log(n));
    ln_a.push_back(std::log(eigs[n - 1]));
  }
  g.loglog_slope = slope(ln_n, ln_a);
  g.remark_value = 17.0 / 5.0 * std::cbrt(2.0);
  return g;
}

}  // namespace nel::painleve
