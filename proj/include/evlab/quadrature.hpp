#pragma once

#include <span>
#include <vector>

#include "evlab/grid.hpp"
#include "evlab/potential.hpp"

namespace evlab {

/// A probability density sampled on a grid: nonnegative values with unit
/// mass under the grid measure (renormalized at construction).
struct DensityOnGrid {
  std::vector<double> values;
  Grid grid;

  static DensityOnGrid normalized(std::vector<double> values, Grid grid);
};

/// Trapezoidal integral of grid samples under the grid measure.
double integrate(std::span<const double> values, const Grid& grid);

/// ln of the partition function Z = integral of e^{-t V}. The minimum of tV
/// on the grid is factored out before exponentiating so the sum never
/// underflows.
double log_partition(const Potential& v, double t, const Grid& grid);

/// The Gibbs density e^{-tV} / Z on the grid.
DensityOnGrid gibbs_density(const Potential& v, double t, const Grid& grid);

double l1_distance(const DensityOnGrid& rho1, const DensityOnGrid& rho2);

/// Relative entropy of rho with respect to rho0. Nodes with rho = 0
/// contribute zero; any node with rho0 = 0 < rho makes the result +infinity.
double relative_entropy(const DensityOnGrid& rho, const DensityOnGrid& rho0);

/// First-difference Dirichlet form, the discrete \int |psi'|^2 in the grid
/// measure. Matches the quadratic form of the assembled operators exactly.
double dirichlet_energy(std::span<const double> psi, const Grid& grid);

/// \int psi^2 ln(psi^2) with 0 ln 0 = 0; requires unit weighted norm.
double entropy_term(std::span<const double> psi, const Grid& grid);

double weighted_norm_sq(std::span<const double> psi, const Grid& grid);

}  // namespace evlab
