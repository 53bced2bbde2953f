#include "nel/extrapolation.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "nel/error.hpp"

namespace nel::extrap {

namespace {

// Solves M^T w = e_0 for the weights that pick the constant term out of
// the least-squares-free (square) model fit. Gaussian elimination with
// partial pivoting on a copy.
std::vector<double> constant_term_weights(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  // Transpose in place.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) std::swap(m[i][j], m[j][i]);
  std::vector<double> rhs(n, 0.0);
  rhs[0] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (m[piv][col] == 0.0) fail(ErrorKind::IllConditioned, "singular extrapolation system");
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> w(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= m[i][c] * w[c];
    w[i] = acc / m[i][i];
  }
  return w;
}

}  // namespace

std::vector<double> integer_exponents(int count) {
  std::vector<double> p;
  for (int j = 1; j <= count; ++j) p.push_back(j);
  return p;
}

ExtrapolationResult richardson(std::span<const double> indices, std::span<const double> values,
                               std::span<const double> exponents, int stages) {
  const std::size_t k = indices.size();
  require(values.size() == k, "indices and values differ in length");
  require(stages >= 0, "stages must be non-negative");
  require(k >= static_cast<std::size_t>(stages) + 1, "need at least stages+1 points");
  require(exponents.size() >= static_cast<std::size_t>(stages), "not enough correction exponents");
  for (std::size_t i = 0; i < k; ++i) {
    require(indices[i] > 0.0, "indices must be positive");
    if (i > 0) require(indices[i] > indices[i - 1], "indices must increase");
  }
  for (int j = 1; j < stages; ++j)
    require(exponents[j] > exponents[j - 1], "exponents must increase");

  ExtrapolationResult out;
  out.stages = stages;
  out.table.emplace_back(values.begin(), values.end());
  const double n_ref = indices[k - 1];

  for (int j = 1; j <= stages; ++j) {
    std::vector<double> row;
    for (std::size_t i = 0; i + j < k; ++i) {
      // Columns are scaled by n_ref^{p}, which leaves the constant term's
      // weights unchanged and keeps the system well scaled.
      std::vector<std::vector<double>> m(j + 1, std::vector<double>(j + 1));
      for (int r = 0; r <= j; ++r) {
        m[r][0] = 1.0;
        for (int c = 1; c <= j; ++c) m[r][c] = std::pow(indices[i + r] / n_ref, -exponents[c - 1]);
      }
      const auto w = constant_term_weights(std::move(m));
      double est = 0.0;
      for (int r = 0; r <= j; ++r) {
        if (std::abs(w[r]) > 1e12) {
          std::ostringstream os;
          os << "elimination weight " << w[r] << " at stage " << j;
          fail(ErrorKind::IllConditioned, os.str());
        }
        est += w[r] * values[i + r];
      }
      row.push_back(est);
      if (j == stages && i + j == k - 1) out.weights = w;
    }
    out.table.push_back(std::move(row));
  }

  out.limit = out.table[stages].back();
  if (stages == 0) {
    out.weights = {1.0};
    out.error_estimate = k >= 2 ? std::abs(values[k - 1] - values[k - 2]) : 0.0;
  } else {
    out.error_estimate = std::abs(out.table[stages].back() - out.table[stages - 1].back());
  }
  return out;
}

double fit_correction_exponent(std::span<const double> indices, std::span<const double> values) {
  require(indices.size() == 3 && values.size() == 3, "exponent fit takes exactly three points");
  const double r = (values[2] - values[1]) / (values[1] - values[0]);
  auto model = [&](double p) {
    const double a = std::pow(indices[0], -p), b = std::pow(indices[1], -p),
                 c = std::pow(indices[2], -p);
    return (c - b) / (b - a);
  };
  double lo = 1e-3, hi = 20.0;
  double flo = model(lo) - r, fhi = model(hi) - r;
  if (!(flo * fhi < 0.0)) return std::numeric_limits<double>::quiet_NaN();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = model(mid) - r;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace nel::extrap
