#pragma once

#include <span>
#include <vector>

#include "evlab/grid.hpp"
#include "evlab/potential.hpp"

namespace evlab {

/// Symmetric tridiagonal representation of -Laplacian + V on a grid, in the
/// inner product weighted by the grid measure. Line grids get Dirichlet
/// walls at both ends; Radial grids get a zero-flux condition at r = 0
/// (node 0 is eliminated against node 1) and Dirichlet at rmax. `metric`
/// maps eigenvector coordinates u back to function samples psi = u / sqrt(w).
struct TridiagonalOperator {
  std::vector<double> diag;
  std::vector<double> offdiag;  // one shorter than diag
  std::vector<double> metric;   // grid weight per unknown
  Grid grid;
  int first_node = 1;  // grid index of the first unknown

  int size() const { return static_cast<int>(diag.size()); }
};

struct SpectralResult {
  std::vector<double> eigenvalues;  // strictly ascending
  std::vector<double> ground_state;  // full-grid samples, >= 0, unit weighted norm
  double residual = 0.0;  // ||H psi - E0 psi|| in the weighted norm
  Grid grid;
};

TridiagonalOperator assemble(const Potential& v, const Grid& grid);

/// Number of eigenvalues strictly below mu (Sturm sign-change count).
int sturm_count_below(const TridiagonalOperator& op, double mu);

/// The k smallest eigenvalues by bisection, each within tol.
std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int k,
                                       double tol = 1e-10);

/// Inverse iteration at the given eigenvalue; returns full-grid samples with
/// unit weighted norm and sign fixed so the maximal component is positive.
std::vector<double> eigenvector(const TridiagonalOperator& op, double e,
                                double* residual_out = nullptr);

/// Ground state from a converged lowest eigenvalue: nonnegative, normalized,
/// with the solve residual recorded.
SpectralResult ground_state(const TridiagonalOperator& op, double e0);

/// Convenience: k lowest eigenvalues plus the ground state in one call.
SpectralResult solve_spectrum(const Potential& v, const Grid& grid, int k,
                              double tol = 1e-10);

/// Discrete Rayleigh quotient: Dirichlet form plus potential term of a
/// normalized trial function on the grid.
double rayleigh_quotient(std::span<const double> psi, const Potential& v,
                         const Grid& grid);

}  // namespace evlab
