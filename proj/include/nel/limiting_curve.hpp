#pragma once

#include <gmpxx.h>

#include <string_view>
#include <vector>

#include "nel/ode.hpp"
#include "nel/separatrix.hpp"

namespace nel::limit {

/// 2^{1/3}, the limiting curve's value at t = 0.
double z0_exact();

/// 2^{5/6}, the growth constant of a_n / sqrt(n).
double a_exact();

enum class CurveSource { Ode, Implicit };

std::string_view to_string(CurveSource s);

struct LimitCurve {
  std::vector<double> t;
  std::vector<double> Z;
  CurveSource source = CurveSource::Ode;
};

/// Right-hand side of Z' = -t / (Z + sqrt(Z^2 - t^2)). Throws
/// DomainViolation when Z^2 < t^2 beyond rounding.
double limit_rhs(double t, double Z);

/// Z(t) on [0, 1] from the limit ODE, integrated away from Z(1) = 1.
///
/// Near t = 1 the square root vanishes like sqrt(1 - t), so the ODE is
/// carried in s = sqrt(1 - t), where dZ/ds = 2 s t / (Z + sqrt(Z^2 - t^2))
/// has a bounded Lipschitz constant.
class LimitOde {
 public:
  explicit LimitOde(const IntegratorConfig& cfg = tight_config());

  double operator()(double t) const;
  double derivative(double t) const;
  double at_zero() const { return z_at_zero_; }

  static IntegratorConfig tight_config();

 private:
  Trajectory<1> traj_;
  double z_at_zero_;
};

LimitCurve solve_limit_ode(int grid_size);

/// Right side of the implicit solution
///   K/t^3 = (1 + 3G^2)(G + sqrt(G^2-1)) (sqrt(G^2-1) - 2G)/(sqrt(G^2-1) + 2G)
/// with G = Z/t.
double implicit_relation(double G);

/// Z(t) = t G(t) where G solves the implicit relation with K = -4.
/// t = 0 (and t below 1e-9, where Z - 2^{1/3} is under 1e-18) return the
/// analytic limit.
double implicit_Z(double t);

LimitCurve implicit_curve(int grid_size);

/// sqrt(2) Z(0+), with Z(0+) taken from the implicit root solve at a small
/// positive t. Throws DomainViolation if it differs from 2^{5/6} by more
/// than 1e-12.
double compute_A();

/// Exact table of the walk coefficients alpha_{n,k}.
class AlphaTable {
 public:
  AlphaTable(int n_max, int k_max);

  int n_max() const { return n_max_; }
  int k_max() const { return k_max_; }
  const mpq_class& at(int n, int k) const;

 private:
  int n_max_, k_max_, width_;
  std::vector<mpq_class> data_;  // rows n = 1..width_, columns k = 0..k_max_
  friend AlphaTable alpha_recursion(int n_max, int k_max);
};

/// Fills alpha_{n,k} by increasing k from alpha_{2,0} = 1 using
///   2 alpha_{1,k} + alpha_{2,k-1} = 0,
///   2 alpha_{2,k} + alpha_{3,k-1} = 0,
///   2 alpha_{n,k} + alpha_{n-1,k-1} + alpha_{n+1,k-1} = 0  (n >= 3).
AlphaTable alpha_recursion(int n_max, int k_max);

/// Closed form for same-parity (n, k); n = 1 requires odd k. Throws
/// ParityMismatch otherwise.
mpq_class alpha_closed_form(int n, int k);

struct EtaCheck {
  double lambda = 0.0;
  double eta_direct = 0.0;
  double eta_closed = 0.0;
  /// |z(t)^2 - z(0)^2 + t^2/2 + eta_direct|
  double integral_residual = 0.0;
  /// |eta_direct - eta_closed|
  double closed_form_mismatch = 0.0;
};

/// Compares eta(t) = int_0^t s cos(2 lambda s z(s)) ds against the summed
/// closed form int z z' sqrt(1 - s^2/z^2) - int z z' on the n-th scaled
/// separatrix.
EtaCheck eta_consistency_check(int n_index, double t);
EtaCheck eta_consistency_check(const separatrix::ScaledSeparatrix& sep, double t);

}  // namespace nel::limit
