#pragma once

#include <functional>
#include <vector>

namespace nel {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n).
GaussRule gauss_legendre(int n);

/// Composite Gauss-Legendre over [a, b] with panels no wider than
/// max_panel.
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        double max_panel, const GaussRule& rule);

}  // namespace nel
