#include "nel/ode.hpp"

#include <algorithm>

namespace nel {

namespace {

// Sign of y' with exact zeros folded onto the previous sign so a flat
// touch does not register as two extrema.
int slope_sign(double d, int prev) {
  if (d > 0.0) return 1;
  if (d < 0.0) return -1;
  return prev;
}

}  // namespace

std::vector<Extremum> find_extrema(const Trajectory<1>& traj, double resolution) {
  std::vector<Extremum> out;
  if (traj.step_count() == 0) return out;

  constexpr int kProbes = 4;
  for (std::size_t i = 0; i < traj.step_count(); ++i) {
    const DenseStep<1> st = traj.step(i);
    // Probe the step interior so a max/min pair inside one step is not lost.
    double xa = st.x0;
    double da = st.f0[0];
    for (int p = 1; p <= kProbes; ++p) {
      const double xb = p == kProbes ? st.x1() : st.x0 + st.h * p / kProbes;
      const double db = p == kProbes ? st.f1[0] : st.derivative(xb)[0];
      const int sa = slope_sign(da, 0);
      const int sb = slope_sign(db, 0);
      if (sa != 0 && sb != 0 && sa != sb) {
        double lo = xa, hi = xb;
        double dlo = da;
        while (std::abs(hi - lo) > resolution) {
          const double mid = 0.5 * (lo + hi);
          if (mid == lo || mid == hi) break;
          const double dm = st.derivative(mid)[0];
          if ((dm > 0.0) == (dlo > 0.0) && dm != 0.0) {
            lo = mid;
            dlo = dm;
          } else {
            hi = mid;
          }
        }
        const double xe = 0.5 * (lo + hi);
        // In increasing x, + -> - is a maximum. A backward trajectory sees
        // the same crossing with reversed signs.
        const bool falling_in_x = traj.direction() > 0 ? (sa > 0) : (sa < 0);
        out.push_back({xe, st.eval(xe)[0], falling_in_x ? ExtremumKind::Max : ExtremumKind::Min});
      }
      xa = xb;
      da = db;
    }
  }
  if (traj.direction() < 0) std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace nel
