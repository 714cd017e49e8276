#pragma once

#include <cmath>
#include <utility>

namespace evlab {

/// Golden-section minimization of f on [a, b] down to an interval of width
/// xtol. A coarse pre-scan picks the best bracket first, so a multimodal f
/// (double-well Gibbs densities produce them) still lands in the global
/// basin. Returns the best (x, f(x)) pair evaluated.
template <class F>
std::pair<double, double> golden_minimize(F&& f, double a, double b,
                                          double xtol, int prescan = 33) {
  double best_x = 0.5 * (a + b);
  double best_f = f(best_x);
  if (prescan > 1) {
    const double step = (b - a) / (prescan - 1);
    int best_i = -1;
    for (int i = 0; i < prescan; ++i) {
      const double x = a + i * step;
      const double fx = f(x);
      if (fx < best_f) {
        best_f = fx;
        best_x = x;
        best_i = i;
      }
    }
    if (best_i >= 0) {
      a = best_x - step;
      b = best_x + step;
    } else {
      a = best_x - step;
      b = best_x + step;
    }
  }

  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > xtol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    if (fc < best_f) {
      best_f = fc;
      best_x = c;
    }
    if (fd < best_f) {
      best_f = fd;
      best_x = d;
    }
  }
  return {best_x, best_f};
}

}  // namespace evlab
