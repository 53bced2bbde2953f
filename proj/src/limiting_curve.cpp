#include "nel/limiting_curve.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nel/quadrature.hpp"

namespace nel::limit {

using std::numbers::pi;

double z0_exact() { return std::cbrt(2.0); }

double a_exact() { return std::pow(2.0, 5.0 / 6.0); }

std::string_view to_string(CurveSource s) {
  return s == CurveSource::Ode ? "ode" : "implicit";
}

namespace {

double checked_root(double Z, double t) {
  const double d = Z * Z - t * t;
  if (d < -1e-12 * std::max(1.0, Z * Z)) {
    std::ostringstream os;
    os << "Z^2 < t^2 at t=" << t << " (Z=" << Z << ")";
    fail(ErrorKind::DomainViolation, os.str());
  }
  return std::sqrt(std::max(d, 0.0));
}

std::vector<double> uniform_grid(int size) {
  require(size >= 2, "grid needs at least two points");
  std::vector<double> t(size);
  for (int i = 0; i < size; ++i) t[i] = static_cast<double>(i) / (size - 1);
  t.back() = 1.0;
  return t;
}

}  // namespace

double limit_rhs(double t, double Z) { return -t / (Z + checked_root(Z, t)); }

IntegratorConfig LimitOde::tight_config() {
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-13;
  cfg.abs_tol = 1e-14;
  return cfg;
}

LimitOde::LimitOde(const IntegratorConfig& cfg) : z_at_zero_(0.0) {
  auto rhs = [](double s, const State<1>& z) {
    const double t = 1.0 - s * s;
    return State<1>{2.0 * s * t / (z[0] + checked_root(z[0], t))};
  };
  traj_ = integrate<1>(rhs, 0.0, State<1>{1.0}, 1.0, cfg);
  z_at_zero_ = traj_.y_back()[0];
}

double LimitOde::operator()(double t) const {
  require(t >= 0.0 && t <= 1.0, "limit curve is defined on [0, 1]");
  return traj_.at(std::sqrt(1.0 - t))[0];
}

double LimitOde::derivative(double t) const { return limit_rhs(t, (*this)(t)); }

LimitCurve solve_limit_ode(int grid_size) {
  const LimitOde ode;
  LimitCurve curve;
  curve.source = CurveSource::Ode;
  curve.t = uniform_grid(grid_size);
  for (double t : curve.t) curve.Z.push_back(ode(t));
  return curve;
}

double implicit_relation(double G) {
  require(G >= 1.0, "implicit relation needs G >= 1");
  const double r = std::sqrt(G * G - 1.0);
  return (1.0 + 3.0 * G * G) * (G + r) * (r - 2.0 * G) / (r + 2.0 * G);
}

double implicit_Z(double t) {
  require(t >= 0.0 && t <= 1.0, "implicit_Z is defined on [0, 1]");
  if (t < 1e-9) return z0_exact();
  if (t == 1.0) return 1.0;

  // With G = cosh(u): G + sqrt(G^2-1) = e^u and the quotient has derivative
  // 4/(sinh u + 2 cosh u)^2, so F(u) = P e^u Q + 4/t^3 is smooth in u.
  const double target = 4.0 / (t * t * t);
  auto F = [&](double u, double& dF) {
    const double c = std::cosh(u), s = std::sinh(u), e = std::exp(u);
    const double P = 1.0 + 3.0 * c * c, dP = 6.0 * c * s;
    const double den = s + 2.0 * c;
    const double Q = (s - 2.0 * c) / den, dQ = 4.0 / (den * den);
    dF = dP * e * Q + P * e * Q + P * e * dQ;
    return P * e * Q + target;
  };

  double lo = 0.0, hi = std::acosh(4.0 / t + 1.0);
  double dF;
  if (!(F(lo, dF) >= 0.0 && F(hi, dF) <= 0.0)) {
    std::ostringstream os;
    os << "implicit relation not bracketed at t=" << t;
    fail(ErrorKind::RootNotBracketed, os.str());
  }
  double u = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = F(u, dF);
    if (f > 0.0) lo = u; else hi = u;
    double next = u - f / dF;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 1e-16 * std::max(1.0, u) || hi - lo <= 1e-16 * std::max(1.0, u)) {
      u = next;
      break;
    }
    u = next;
  }
  return t * std::cosh(u);
}

LimitCurve implicit_curve(int grid_size) {
  LimitCurve curve;
  curve.source = CurveSource::Implicit;
  curve.t = uniform_grid(grid_size);
  for (double t : curve.t) curve.Z.push_back(implicit_Z(t));
  return curve;
}

double compute_A() {
  const double A = std::sqrt(2.0) * implicit_Z(1e-7);
  if (std::abs(A - a_exact()) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "sqrt(2) Z(0+) = " << A << " differs from 2^(5/6)";
    fail(ErrorKind::DomainViolation, os.str());
  }
  return A;
}

AlphaTable::AlphaTable(int n_max, int k_max)
    : n_max_(n_max), k_max_(k_max), width_(n_max + k_max + 1),
      data_(static_cast<std::size_t>(width_) * (k_max + 1)) {}

const mpq_class& AlphaTable::at(int n, int k) const {
  require(n >= 1 && n <= n_max_ && k >= 0 && k <= k_max_, "alpha index out of range");
  return data_[static_cast<std::size_t>(n - 1) * (k_max_ + 1) + k];
}

AlphaTable alpha_recursion(int n_max, int k_max) {
  require(n_max >= 2 && k_max >= 0, "alpha table needs n_max >= 2, k_max >= 0");
  AlphaTable table(n_max, k_max);
  const int W = table.width_;
  auto cell = [&](int n, int k) -> mpq_class& {
    return table.data_[static_cast<std::size_t>(n - 1) * (k_max + 1) + k];
  };
  cell(2, 0) = 1;
  // Row n at column k depends on rows n-1 and n+1 at k-1. Rows beyond
  // n_max + k_max never feed back into the requested block.
  for (int k = 1; k <= k_max; ++k) {
    for (int n = 1; n <= W; ++n) {
      mpq_class sum = 0;
      if (n == 1) {
        sum = cell(2, k - 1);
      } else if (n == 2) {
        sum = cell(3, k - 1);
      } else {
        sum = cell(n - 1, k - 1);
        if (n + 1 <= W) sum += cell(n + 1, k - 1);
      }
      cell(n, k) = -sum / 2;
    }
  }
  return table;
}

namespace {

mpz_class factorial(long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

}  // namespace

mpq_class alpha_closed_form(int n, int k) {
  require(n >= 1 && k >= 0, "alpha_closed_form needs n >= 1, k >= 0");
  if ((n + k) % 2 != 0) {
    std::ostringstream os;
    os << "alpha(" << n << "," << k << ") has mixed parity";
    fail(ErrorKind::ParityMismatch, os.str());
  }
  if (n == 1) {
    // k = 2p + 1: -(2p)! / (2^{2p+1} p! (p+1)!)
    const long p = (k - 1) / 2;
    mpz_class den = factorial(p) * factorial(p + 1);
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(2 * p + 1));
    mpq_class r(-factorial(2 * p), den);
    r.canonicalize();
    return r;
  }
  const long lower = (k - n) / 2 + 1;
  if (lower < 0) return 0;  // 1/(negative integer)! vanishes
  mpz_class num = factorial(k) * (n - 1);
  if (n % 2 != 0) num = -num;
  mpz_class den = factorial((k + n) / 2) * factorial(lower);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(k));
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

EtaCheck eta_consistency_check(const separatrix::ScaledSeparatrix& sep, double t) {
  require(t >= 0.0 && t <= 1.0, "eta check needs t in [0, 1]");
  EtaCheck out;
  out.lambda = sep.lambda();
  const double z0 = sep.z(0.0);
  if (t == 0.0) return out;

  const double lambda = sep.lambda();
  // Integrands oscillate at frequency up to 2 lambda z; keep panels below
  // pi/(lambda max z) so each period sees at least eight nodes.
  double zmax = 0.0;
  for (int i = 0; i <= 200; ++i) zmax = std::max(zmax, sep.z(t * i / 200.0));
  const double panel = pi / (lambda * zmax);
  static const GaussRule rule = gauss_legendre(8);

  out.eta_direct = integrate_panels(
      [&](double s) { return s * std::cos(2.0 * lambda * s * sep.z(s)); }, 0.0, t, panel, rule);
  const double root_part = integrate_panels(
      [&](double s) {
        const double z = sep.z(s);
        return z * sep.dz(s) * std::sqrt(std::max(0.0, 1.0 - s * s / (z * z)));
      },
      0.0, t, panel, rule);
  const double plain_part =
      integrate_panels([&](double s) { return sep.z(s) * sep.dz(s); }, 0.0, t, panel, rule);
  out.eta_closed = root_part - plain_part;

  const double zt = sep.z(t);
  out.integral_residual = std::abs(zt * zt - z0 * z0 + 0.5 * t * t + out.eta_direct);
  out.closed_form_mismatch = std::abs(out.eta_direct - out.eta_closed);
  if (!std::isfinite(out.eta_direct) || !std::isfinite(out.eta_closed))
    fail(ErrorKind::QuadratureFailure, "eta quadrature produced a non-finite value");
  return out;
}

EtaCheck eta_consistency_check(int n_index, double t) {
  require(n_index >= 1, "eta check needs n_index >= 1");
  return eta_consistency_check(separatrix::ScaledSeparatrix(n_index), t);
}

}  // namespace nel::limit
