#include "evlab/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace evlab::oracle {

double HarmonicReference::deficit() const {
  return e0_exact + ln_z_exact / t -
         dimension / t * (1.0 + 0.5 * std::log(std::numbers::pi * t));
}

HarmonicReference harmonic_reference(double t, int d, std::vector<double> center,
                                     double offset) {
  if (!(t > 0)) throw std::invalid_argument("harmonic_reference: t must be > 0");
  if (d < 1) throw std::invalid_argument("harmonic_reference: d must be >= 1");
  HarmonicReference ref;
  ref.t = t;
  ref.dimension = d;
  ref.center = std::move(center);
  ref.offset = offset;
  ref.e0_exact = d / t + offset;
  ref.ln_z_exact = -t * offset + 0.5 * d * std::log(std::numbers::pi * t);
  ref.gauss_variance = 0.5 * t;
  return ref;
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double gaussian_l1_shift(double b_norm, double t, int d) {
  if (b_norm < 0) throw std::invalid_argument("gaussian_l1_shift: b_norm >= 0");
  if (!(t > 0)) throw std::invalid_argument("gaussian_l1_shift: t must be > 0");
  (void)d;  // the distance only depends on the marginal along the shift
  return 2.0 * (2.0 * normal_cdf(b_norm / std::sqrt(2.0 * t)) - 1.0);
}

double gaussian_l1_widths(double s1, double s2) {
  if (!(s1 > 0) || !(s2 > 0))
    throw std::invalid_argument("gaussian_l1_widths: deviations must be > 0");
  if (s1 == s2) return 0.0;
  if (s1 > s2) std::swap(s1, s2);
  const double xstar = std::sqrt(2.0 * std::log(s2 / s1) /
                                 (1.0 / (s1 * s1) - 1.0 / (s2 * s2)));
  return 4.0 * (normal_cdf(xstar / s1) - normal_cdf(xstar / s2));
}

}  // namespace evlab::oracle
