#include "nel/fourier.hpp"

#include <cmath>
#include <numbers>

#include "nel/error.hpp"

namespace nel::fourier {

using std::numbers::pi;

double square_wave_partial_sum(int N, double x) {
  require(N >= 0, "N must be non-negative");
  double acc = 0.0;
  for (int n = N; n >= 0; --n) acc += std::sin((2.0 * n + 1.0) * x) / (2.0 * n + 1.0);
  return 4.0 / pi * acc;
}

std::vector<double> fourier_partial_sum(int N, std::span<const double> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(square_wave_partial_sum(N, x));
  return out;
}

Overshoot gibbs_overshoot(int N, int grid) {
  require(grid >= 3, "grid needs at least three points");
  const double h = pi / (grid + 1);
  int best = 1;
  double best_v = square_wave_partial_sum(N, h);
  for (int i = 2; i <= grid; ++i) {
    const double v = square_wave_partial_sum(N, i * h);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  double a = (best - 1) * h, b = (best + 1) * h;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = square_wave_partial_sum(N, c), fd = square_wave_partial_sum(N, d);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = square_wave_partial_sum(N, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = square_wave_partial_sum(N, d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, square_wave_partial_sum(N, x)};
}

}  // namespace nel::fourier
