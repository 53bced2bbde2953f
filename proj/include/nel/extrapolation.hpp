#pragma once

#include <span>
#include <vector>

namespace nel::extrap {

struct ExtrapolationResult {
  double limit = 0.0;
  int stages = 0;
  /// table[j][i]: estimate after eliminating j correction terms, using
  /// points i..i+j.
  std::vector<std::vector<double>> table;
  /// |last-stage estimate - previous-stage estimate|
  double error_estimate = 0.0;
  /// Weights w with limit = sum w_i s_i over the final window.
  std::vector<double> weights;
};

/// Integer correction exponents 1, 2, ..., count.
std::vector<double> integer_exponents(int count);

/// Eliminates the corrections n^{-p_1}, ..., n^{-p_stages} from a sequence
/// modelled as s_n = L + sum_j e_j n^{-p_j}. Indices must be positive and
/// strictly increasing; the final estimate uses the last stages+1 points.
/// Throws IllConditioned when an elimination weight exceeds 1e12.
ExtrapolationResult richardson(std::span<const double> indices, std::span<const double> values,
                               std::span<const double> exponents, int stages);

/// Exponent p of a three-point fit s_n = L + e n^{-p}; NaN when the
/// differences do not shrink monotonically.
double fit_correction_exponent(std::span<const double> indices, std::span<const double> values);

}  // namespace nel::extrap
