#pragma once

#include <span>
#include <vector>

namespace nel::fourier {

/// S_{2N+1}(x) = (4/pi) sum_{n=0}^{N} sin((2n+1)x) / (2n+1), the square
/// wave's partial sine series.
double square_wave_partial_sum(int N, double x);

std::vector<double> fourier_partial_sum(int N, std::span<const double> xs);

struct Overshoot {
  double x = 0.0;
  double value = 0.0;
};

/// Maximum of S_{2N+1} on (0, pi): a uniform grid of `grid` points, then
/// golden-section refinement around the best grid point.
Overshoot gibbs_overshoot(int N, int grid = 4000);

}  // namespace nel::fourier
