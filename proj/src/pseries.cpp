#include "nel/pseries.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <limits>
#include <sstream>

#include "nel/error.hpp"
#include "nel/parallel.hpp"

namespace nel::pseries {

using std::numbers::pi;

ComplexPolynomial::ComplexPolynomial(std::vector<cplx> c) : coeffs(std::move(c)) {
  require(coeffs.size() >= 1, "polynomial needs at least one coefficient");
  require(coeffs.back() != cplx(0.0), "leading coefficient must be nonzero");
}

cplx ComplexPolynomial::operator()(cplx z) const {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx ComplexPolynomial::derivative(cplx z) const {
  cplx acc = 0.0;
  for (int k = degree(); k >= 1; --k) acc = acc * z + static_cast<double>(k) * coeffs[k];
  return acc;
}

double reduced_phase(double tau, long long k) {
  const double m = static_cast<double>(k * k + k);  // exact below 2^53
  const double p = tau * m;
  const double err = std::fma(tau, m, -p);  // p + err == tau * m exactly
  double r = std::fmod(p, 2.0) + err;       // fmod is exact
  r = std::fmod(r, 2.0);
  if (r < 0.0) r += 2.0;
  return r;
}

ComplexPolynomial ftau_partial_sum(double tau, int n) {
  require(n >= 1, "partial sum needs n >= 1");
  std::vector<cplx> c(n + 1);
  for (int k = 0; k <= n; ++k) c[k] = std::polar(1.0, pi * reduced_phase(tau, k));
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial ftau_partial_sum(long long num, long long den, int n) {
  require(n >= 1, "partial sum needs n >= 1");
  require(den > 0, "denominator must be positive");
  std::vector<cplx> c(n + 1);
  const __int128 mod = static_cast<__int128>(2) * den;
  for (long long k = 0; k <= n; ++k) {
    __int128 r = (static_cast<__int128>(num) * (k * k + k)) % mod;
    if (r < 0) r += mod;
    c[k] = std::polar(1.0, pi * static_cast<double>(r) / static_cast<double>(den));
  }
  return ComplexPolynomial(std::move(c));
}

double RootSet::max_modulus() const {
  double m = 0.0;
  for (const auto& z : roots) m = std::max(m, std::abs(z));
  return m;
}

namespace {

struct NewtonStep {
  cplx ratio;
  /// |p(z)| is within rounding of zero.
  bool at_noise_floor;
};

// Newton correction p(z)/p'(z). Outside the unit disk it is computed from
// the reversed polynomial so high degrees do not overflow.
NewtonStep newton_step(const ComplexPolynomial& p, cplx z) {
  const int n = p.degree();
  const double eps = std::numeric_limits<double>::epsilon();
  if (std::abs(z) <= 1.0) {
    cplx v = 0.0, dv = 0.0;
    double mag = 0.0;
    const double az = std::abs(z);
    for (int k = n; k >= 0; --k) {
      dv = dv * z + v;
      v = v * z + p.coeffs[k];
      mag = mag * az + std::abs(p.coeffs[k]);
    }
    return {v / dv, std::abs(v) <= 4.0 * (n + 1) * eps * mag};
  }
  const cplx w = 1.0 / z;
  const double aw = std::abs(w);
  cplx q = 0.0, dq = 0.0;
  double mag = 0.0;
  for (int k = 0; k <= n; ++k) {
    dq = dq * w + q;
    q = q * w + p.coeffs[k];
    mag = mag * aw + std::abs(p.coeffs[k]);
  }
  return {z / (static_cast<double>(n) - w * dq / q), std::abs(q) <= 4.0 * (n + 1) * eps * mag};
}

bool aberth(const ComplexPolynomial& p, std::vector<cplx>& z, int& iterations) {
  const std::size_t n = z.size();
  std::vector<bool> done(n, false);
  for (int it = 1; it <= 500; ++it) {
    iterations = it;
    bool all = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const auto ns = newton_step(p, z[i]);
      cplx sum = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      const cplx w = ns.ratio / (1.0 - ns.ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return false;
      z[i] -= w;
      if (ns.at_noise_floor || std::abs(w) <= 4e-16 * std::max(1.0, std::abs(z[i])))
        done[i] = true;
      else
        all = false;
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

RootSet all_roots(const ComplexPolynomial& p) {
  const int n = p.degree();
  require(n >= 1, "root finding needs degree >= 1");
  RootSet out;
  double bound = 0.0;
  for (const auto& c : p.coeffs) bound += std::abs(c);
  bound = std::max(1.0, bound / std::abs(p.coeffs.back()));

  for (int attempt = 0; attempt < 3; ++attempt) {
    out.attempts = attempt + 1;
    const double radius = bound * std::pow(0.9, attempt);
    const double offset = 0.4 + 0.37 * attempt;
    std::vector<cplx> z(n);
    for (int j = 0; j < n; ++j) z[j] = std::polar(radius, 2.0 * pi * j / n + offset);
    if (!aberth(p, z, out.iterations)) continue;
    for (auto& r : z)
      for (int k = 0; k < 2; ++k) {
        const cplx step = newton_step(p, r).ratio;
        if (std::isfinite(step.real()) && std::isfinite(step.imag())) r -= step;
      }
    out.roots = std::move(z);
    out.residuals.clear();
    for (const auto& r : out.roots) out.residuals.push_back(std::abs(p(r)));
    return out;
  }
  std::ostringstream os;
  os << "Aberth iteration did not converge for degree " << n << " after 3 seedings";
  fail(ErrorKind::NoConvergence, os.str());
}

double rho_n(double tau, int n) { return all_roots(ftau_partial_sum(tau, n)).max_modulus(); }

TauScan tau_scan(double start, double end, double step, int n, int top) {
  require(step > 0.0, "scan step must be positive");
  require(end >= start, "scan end precedes start");
  TauScan scan;
  scan.n = n;
  const auto count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
  scan.points = parallel_map(count, [&](std::size_t i) {
    ScanPoint pt;
    pt.tau = start + static_cast<double>(i) * step;
    try {
      pt.rho = rho_n(pt.tau, n);
    } catch (const std::exception& e) {
      pt.rho = std::numeric_limits<double>::quiet_NaN();
      pt.error = e.what();
    }
    return pt;
  });
  for (std::size_t i = 1; i + 1 < scan.points.size(); ++i) {
    const auto& a = scan.points[i - 1];
    const auto& b = scan.points[i];
    const auto& c = scan.points[i + 1];
    if (a.error || b.error || c.error) continue;
    if (b.rho > a.rho && b.rho >= c.rho) scan.maxima.push_back(b);
  }
  std::stable_sort(scan.maxima.begin(), scan.maxima.end(),
                   [](const ScanPoint& a, const ScanPoint& b) { return a.rho > b.rho; });
  if (scan.maxima.size() > static_cast<std::size_t>(top)) scan.maxima.resize(top);
  return scan;
}

SymmetryReport symmetry_report(const TauScan& scan) {
  SymmetryReport rep;
  const auto& pts = scan.points;
  if (pts.size() < 2) return rep;
  const double step = pts[1].tau - pts[0].tau;
  const double shift = 0.5 / step;
  const auto offset = static_cast<std::size_t>(std::llround(shift));
  require(std::abs(shift - static_cast<double>(offset)) < 1e-6, "scan step must divide 1/2");
  auto index_of = [&](double tau) -> std::optional<std::size_t> {
    const double r = (tau - pts[0].tau) / step;
    const long long i = std::llround(r);
    if (std::abs(r - static_cast<double>(i)) > 1e-6 || i < 0 || i >= static_cast<long long>(pts.size()))
      return std::nullopt;
    return static_cast<std::size_t>(i);
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].error) continue;
    if (i + offset < pts.size() && !pts[i + offset].error)
      rep.half_shift = std::max(rep.half_shift, std::abs(pts[i].rho - pts[i + offset].rho));
    if (auto j = index_of(1.0 - pts[i].tau); j && !pts[*j].error) {
      rep.reflection = std::max(rep.reflection, std::abs(pts[i].rho - pts[*j].rho));
      ++rep.pairs;
    }
  }
  return rep;
}

WindowMinimum liminf_window(double tau, int n_lo, int n_hi) {
  require(n_lo >= 1 && n_hi >= n_lo, "window must be nonempty with n >= 1");
  const auto rhos = parallel_map(static_cast<std::size_t>(n_hi - n_lo + 1),
                                 [&](std::size_t i) { return rho_n(tau, n_lo + static_cast<int>(i)); });
  WindowMinimum w;
  w.n_lo = n_lo;
  w.n_hi = n_hi;
  const auto it = std::min_element(rhos.begin(), rhos.end());
  w.value = *it;
  w.argmin = n_lo + static_cast<int>(it - rhos.begin());
  return w;
}

WindowMinimum liminf_window(double tau, int n) {
  return liminf_window(tau, std::max(1, n - 10), n + 10);
}

}  // namespace nel::pseries
