#pragma once

#include <string>
#include <vector>

#include "evlab/eigensolve.hpp"
#include "evlab/grid.hpp"
#include "evlab/potential.hpp"
#include "evlab/quadrature.hpp"

namespace evlab {

struct NumericsReport {
  int n_points = 0;
  double radius = 0.0;
  double residual = 0.0;
  double err_estimate = 0.0;  // refinement change when refine ran, else a model bound
};

struct StabilityResult {
  bool available = false;
  double distance = 0.0;  // inf_b || gibbs - gaussian_b ||_1, in [0, 2]
  double b_opt = 0.0;     // optimal shift magnitude
};

struct GoldenThompsonResult {
  double lhs_truncated = 0.0;  // partial heat-trace sum, a certified lower bound
  double rhs = 0.0;            // (4 pi t)^{-d/2} Z(t)
  double sharp_vs_gt_margin = 0.0;  // (1 + ln(pi t)/2) - ln(4 pi t)/2 = 1 - ln 2
  int n_terms = 0;
  bool warning = false;  // fewer than 5 eigenvalues below the cutoff
};

/// Full record of one (V, t) evaluation.
struct DeficitReport {
  std::string family;
  std::string params;
  int dimension = 1;
  double t = 1.0;
  double e0 = 0.0;
  double ln_z = 0.0;
  double deficit = 0.0;  // e0 + lnZ/t - d/t (1 + ln(pi t)/2)
  StabilityResult stability;
  double ratio = 0.0;  // t * deficit / S^2; NaN when S < 1e-3 or unavailable
  bool gt_available = false;
  GoldenThompsonResult gt;
  NumericsReport numerics;
};

/// Minimal S for which the ratio t*deficit/S^2 is reported; below it the
/// quotient amplifies discretization noise (near-equality case).
inline constexpr double kStabilityRatioThreshold = 1e-3;

/// Eigenvalue + log-partition part of the report (no stability, no trace
/// bound). Separable potentials sum their 1D factors.
DeficitReport keller_deficit(const Potential& v, double t,
                             const NumericsConfig& numerics);

/// inf over shifts b of the L1 distance between the Gibbs density and the
/// matched Gaussian (pi t)^{-d/2} e^{-|x-b|^2/t}. 1D: golden-section search
/// over b; Radial d >= 2: centered evaluation plus a small-|b| verification
/// scan through the bipolar reduction.
StabilityResult stability_distance(const Potential& v, double t,
                                   const NumericsConfig& numerics);

/// t * deficit / S^2, or NaN when the distance is below the reporting
/// threshold.
double stability_ratio(const DeficitReport& report);

/// Log-Sobolev deficit of a normalized trial at scale lambda:
/// lambda^2 \int |psi'|^2 - pi \int psi^2 ln psi^2 - d pi (1 + ln lambda).
double logsob_deficit(std::span<const double> psi, const Grid& grid,
                      double lambda);

struct LogSobStabilityTerm {
  double value = 0.0;
  double b_opt = 0.0;
};

/// inf over b of \int (psi - lambda^{-d/2} e^{-pi|x-b|^2/(2 lambda^2)})^2 dx
/// for nonnegative normalized psi on a Line grid.
LogSobStabilityTerm logsob_stability_term(std::span<const double> psi,
                                          const Grid& grid, double lambda);

/// \int (V + T ln rho) rho with 0 ln 0 = 0.
double gibbs_functional(const DensityOnGrid& rho, const Potential& v, double T);

/// relative_entropy(rho, rho0) - l1_distance(rho, rho0)^2 / 2.
double ckp_gap(const DensityOnGrid& rho, const DensityOnGrid& rho0);

/// 2 ||sqrt f - sqrt g||_2 - ||f - g||_1 for unit-mass densities.
double sqrt_l1_gap(const DensityOnGrid& f, const DensityOnGrid& g);

GoldenThompsonResult golden_thompson_check(const Potential& v, double t,
                                           const NumericsConfig& numerics);

/// Everything: deficit, stability (when the symmetry supports it), ratio,
/// and the trace bound.
DeficitReport evaluate_full(const Potential& v, double t,
                            const NumericsConfig& numerics);

/// Pointwise matched Gaussian (pi t)^{-d/2} e^{-(x-b)^2/t} sampled on a
/// grid (x is the coordinate for Line grids, the radius for Radial ones).
std::vector<double> matched_gaussian(const Grid& grid, double t, double b);

}  // namespace evlab
