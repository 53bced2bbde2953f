#pragma once

// Partial sums of f_tau(z) = sum_k exp(i pi tau (k^2 + k)) z^k and the
// largest modulus among their zeros.

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace nel::pseries {

using cplx = std::complex<double>;

struct ComplexPolynomial {
  /// Ascending powers; the last entry is nonzero.
  std::vector<cplx> coeffs;

  ComplexPolynomial() = default;
  explicit ComplexPolynomial(std::vector<cplx> c);

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
};

/// tau (k^2 + k) mod 2 for a double tau, computed without rounding the
/// product before the reduction.
double reduced_phase(double tau, long long k);

/// Coefficients exp(i pi tau (k^2 + k)), k = 0..n.
ComplexPolynomial ftau_partial_sum(double tau, int n);

/// Same with tau = num/den taken exactly.
ComplexPolynomial ftau_partial_sum(long long num, long long den, int n);

struct RootSet {
  std::vector<cplx> roots;
  /// |p(z_i)| after polishing.
  std::vector<double> residuals;
  int iterations = 0;
  int attempts = 0;

  double max_modulus() const;
};

/// Aberth-Ehrlich simultaneous iteration with Newton polishing. Throws
/// NoConvergence when three seedings each exhaust 500 iterations.
RootSet all_roots(const ComplexPolynomial& p);

double rho_n(double tau, int n);

struct ScanPoint {
  double tau = 0.0;
  double rho = 0.0;
  std::optional<std::string> error;
};

struct TauScan {
  int n = 0;
  std::vector<ScanPoint> points;
  /// Interior local maxima, largest first.
  std::vector<ScanPoint> maxima;
};

/// rho_n on tau = start, start + step, ..., end. Failures are recorded per
/// point and the scan continues.
TauScan tau_scan(double start, double end, double step, int n, int top = 2);

struct SymmetryReport {
  /// max |rho(tau) - rho(tau + 1/2)| over grid pairs inside the scan.
  double half_shift = 0.0;
  /// max |rho(tau) - rho(1 - tau)| over grid pairs inside the scan.
  double reflection = 0.0;
  std::size_t pairs = 0;
};

/// Pointwise comparisons on a scan whose step divides 1/2.
SymmetryReport symmetry_report(const TauScan& scan);

/// Finite-window stand-in for liminf_n rho_n(f_tau): the minimum over
/// n_lo..n_hi. Labelled as an approximation wherever it is reported.
struct WindowMinimum {
  double value = 0.0;
  int n_lo = 0, n_hi = 0;
  int argmin = 0;
};

WindowMinimum liminf_window(double tau, int n_lo, int n_hi);
/// Window [n - 10, n + 10].
WindowMinimum liminf_window(double tau, int n);

}  // namespace nel::pseries
