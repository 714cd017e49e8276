#pragma once

#include <vector>

namespace evlab::oracle {

/// Closed-form reference data for the harmonic equality family
/// V(x) = t^{-2}|x - center|^2 + offset.
struct HarmonicReference {
  double t = 1.0;
  int dimension = 1;
  std::vector<double> center;
  double offset = 0.0;
  double e0_exact = 0.0;        // d/t + offset
  double ln_z_exact = 0.0;      // -t*offset + (d/2) ln(pi t)
  double gauss_variance = 0.0;  // t/2 per coordinate

  double deficit() const;  // identically zero, kept as a consistency check
};

HarmonicReference harmonic_reference(double t, int d, std::vector<double> center,
                                     double offset);

/// Standard normal distribution function, via the complementary error
/// function (absolute error well below 1e-12).
double normal_cdf(double x);

/// L1 distance between the Gaussian (pi t)^{-d/2} e^{-|x|^2/t} and its
/// translate by a vector of norm b_norm. Reduces to the 1D marginal along
/// the shift: 2 (2 Phi(b/sqrt(2t)) - 1), independent of d.
double gaussian_l1_shift(double b_norm, double t, int d);

/// L1 distance between two centered Gaussian densities with standard
/// deviations s1, s2 (closed form through the crossing radius).
double gaussian_l1_widths(double s1, double s2);

}  // namespace evlab::oracle
