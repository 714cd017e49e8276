#include "evlab/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "evlab/errors.hpp"
#include "evlab/quadrature.hpp"

namespace evlab {

namespace {

// Pivot floor for the Sturm recurrence; keeps the sign count well defined
// when a shift hits an eigenvalue of a leading principal minor.
constexpr double kPivotFloor = 1e-280;

double guarded(double q) {
  if (std::abs(q) < kPivotFloor) return q < 0 ? -kPivotFloor : kPivotFloor;
  return q;
}

}  // namespace

TridiagonalOperator assemble(const Potential& v, const Grid& grid) {
  const bool radial_grid = grid.kind == Grid::Kind::Radial;
  const bool radial_pot = v.symmetry() == Symmetry::Radial;
  if (radial_grid != radial_pot)
    throw std::invalid_argument("assemble: potential symmetry does not match grid kind");
  if (v.is_separable())
    throw std::invalid_argument("assemble: separable potentials assemble per factor");
  if (radial_grid && grid.dimension != v.dimension())
    throw std::invalid_argument("assemble: dimension mismatch");

  TridiagonalOperator op;
  op.grid = grid;
  op.first_node = 1;
  const int n = grid.n_points;
  const double h = grid.spacing;
  const int m = n - 2;  // unknowns: nodes 1 .. n-2
  op.diag.resize(m);
  op.offdiag.resize(m - 1);
  op.metric.resize(m);

  if (!radial_grid) {
    const double inv_h2 = 1.0 / (h * h);
    for (int i = 1; i <= n - 2; ++i) {
      op.diag[i - 1] = 2.0 * inv_h2 + v(grid.points[i]);
      op.metric[i - 1] = grid.weights[i];
    }
    for (int j = 0; j + 1 < m; ++j) op.offdiag[j] = -inv_h2;
    return op;
  }

  // Flux form: couple nodes i, i+1 through the midpoint metric
  // omega_{i+1/2} = |S^{d-1}| r_{i+1/2}^{d-1} / h. The r = 0 node has zero
  // weight; its stationarity condition is psi_0 = psi_1, which removes the
  // first flux term.
  const int d = grid.dimension;
  const double area = unit_sphere_area(d);
  std::vector<double> flux(n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    const double rmid = 0.5 * (grid.points[i] + grid.points[i + 1]);
    flux[i] = area * std::pow(rmid, d - 1) / h;
  }
  for (int i = 1; i <= n - 2; ++i) {
    const double w = grid.weights[i];
    const double left = i >= 2 ? flux[i - 1] : 0.0;
    op.diag[i - 1] = (left + flux[i]) / w + v(grid.points[i]);
    op.metric[i - 1] = w;
  }
  for (int i = 1; i <= n - 3; ++i)
    op.offdiag[i - 1] =
        -flux[i] / std::sqrt(grid.weights[i] * grid.weights[i + 1]);
  return op;
}

int sturm_count_below(const TridiagonalOperator& op, double mu) {
  const int m = op.size();
  int count = 0;
  double q = guarded(op.diag[0] - mu);
  if (q < 0) ++count;
  for (int i = 1; i < m; ++i) {
    const double e = op.offdiag[i - 1];
    q = guarded(op.diag[i] - mu - e * e / q);
    if (q < 0) ++count;
  }
  return count;
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int k,
                                       double tol) {
  const int m = op.size();
  if (k < 1 || k > m)
    throw std::invalid_argument("lowest_eigenvalues: k out of range");
  if (!(tol > 0)) throw std::invalid_argument("lowest_eigenvalues: tol must be > 0");

  // Gershgorin bounds.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < m; ++i) {
    const double el = i > 0 ? std::abs(op.offdiag[i - 1]) : 0.0;
    const double er = i + 1 < m ? std::abs(op.offdiag[i]) : 0.0;
    lo = std::min(lo, op.diag[i] - el - er);
    hi = std::max(hi, op.diag[i] + el + er);
  }

  std::vector<double> out(k);
  for (int j = 1; j <= k; ++j) {
    double a = j > 1 ? out[j - 2] : lo;  // eigenvalues are ascending
    double b = hi;
    int iter = 0;
    while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b))) {
      if (++iter > 200)
        throw NumericalError("lowest_eigenvalues: bisection did not converge");
      const double mid = 0.5 * (a + b);
      if (sturm_count_below(op, mid) >= j)
        b = mid;
      else
        a = mid;
    }
    out[j - 1] = 0.5 * (a + b);
  }
  return out;
}

namespace {

// One inverse-iteration pass: solve (T - sigma) x = b by LDL^T elimination.
// Returns false if a pivot collapses.
bool shifted_solve(const TridiagonalOperator& op, double sigma,
                   const std::vector<double>& b, std::vector<double>& x,
                   std::vector<double>& scratch) {
  const int m = op.size();
  std::vector<double>& c = scratch;  // modified diagonal
  c.resize(m);
  x = b;
  c[0] = op.diag[0] - sigma;
  if (std::abs(c[0]) < kPivotFloor) return false;
  for (int i = 1; i < m; ++i) {
    const double l = op.offdiag[i - 1] / c[i - 1];
    c[i] = op.diag[i] - sigma - l * op.offdiag[i - 1];
    if (std::abs(c[i]) < kPivotFloor) return false;
    x[i] -= l * x[i - 1];
  }
  x[m - 1] /= c[m - 1];
  for (int i = m - 2; i >= 0; --i)
    x[i] = (x[i] - op.offdiag[i] * x[i + 1]) / c[i];
  for (double xi : x)
    if (!std::isfinite(xi)) return false;
  return true;
}

double l2_norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double xi : x) s += xi * xi;
  return std::sqrt(s);
}

}  // namespace

std::vector<double> eigenvector(const TridiagonalOperator& op, double e,
                                double* residual_out) {
  const int m = op.size();
  double sigma = e - 1e-8 * std::max(1.0, std::abs(e));
  // Start vector with both parities so odd excited states are reachable.
  std::vector<double> u(m);
  for (int i = 0; i < m; ++i) u[i] = 1.0 + 0.3 * std::sin(1.2345 * i + 0.567);
  {
    const double norm = l2_norm(u);
    for (double& x : u) x /= norm;
  }
  std::vector<double> next, scratch;

  bool converged = false;
  double residual = 0.0;
  for (int attempt = 0; attempt < 4 && !converged; ++attempt) {
    if (attempt > 0) sigma -= 1e-7 * std::max(1.0, std::abs(e)) * attempt;
    for (int it = 0; it < 50; ++it) {
      if (!shifted_solve(op, sigma, u, next, scratch)) {
        if (attempt == 3)
          throw NumericalError("eigenvector: singular shifted solve");
        break;  // perturb the shift and retry
      }
      const double norm = l2_norm(next);
      if (!(norm > 0)) break;
      for (double& x : next) x /= norm;
      u = next;
      // residual ||(T - e) u||
      residual = 0.0;
      for (int i = 0; i < m; ++i) {
        double r = (op.diag[i] - e) * u[i];
        if (i > 0) r += op.offdiag[i - 1] * u[i - 1];
        if (i + 1 < m) r += op.offdiag[i] * u[i + 1];
        residual += r * r;
      }
      residual = std::sqrt(residual);
      if (residual <= 1e-8 * std::max(1.0, std::abs(e))) {
        converged = true;
        break;
      }
    }
  }
  if (!converged)
    throw NumericalError("eigenvector: inverse iteration did not converge");

  // Sign convention: maximal-magnitude component positive.
  double peak = 0.0;
  for (double x : u)
    if (std::abs(x) > std::abs(peak)) peak = x;
  if (peak < 0)
    for (double& x : u) x = -x;

  // Map back to full-grid samples psi = u / sqrt(w).
  const Grid& g = op.grid;
  std::vector<double> psi(g.n_points, 0.0);
  for (int i = 0; i < m; ++i)
    psi[op.first_node + i] = u[i] / std::sqrt(op.metric[i]);
  if (g.kind == Grid::Kind::Radial) psi[0] = psi[1];  // zero-flux mirror
  if (residual_out) *residual_out = residual;
  return psi;
}

SpectralResult ground_state(const TridiagonalOperator& op, double e0) {
  SpectralResult res;
  res.grid = op.grid;
  res.eigenvalues = {e0};
  double residual = 0.0;
  std::vector<double> psi = eigenvector(op, e0, &residual);
  // The discrete ground state of the assembled operator is positive; clip
  // rounding dust and renormalize in the weighted norm.
  for (double& x : psi) x = std::max(x, 0.0);
  const double norm = std::sqrt(weighted_norm_sq(psi, op.grid));
  if (!(norm > 0)) throw NumericalError("ground_state: zero vector");
  for (double& x : psi) x /= norm;
  res.ground_state = std::move(psi);
  res.residual = residual;
  return res;
}

SpectralResult solve_spectrum(const Potential& v, const Grid& grid, int k,
                              double tol) {
  const TridiagonalOperator op = assemble(v, grid);
  std::vector<double> evs = lowest_eigenvalues(op, k, tol);
  SpectralResult res = ground_state(op, evs[0]);
  res.eigenvalues = std::move(evs);
  return res;
}

double rayleigh_quotient(std::span<const double> psi, const Potential& v,
                         const Grid& grid) {
  const double norm = weighted_norm_sq(psi, grid);
  if (std::abs(norm - 1.0) > 1e-6)
    throw std::invalid_argument("rayleigh_quotient: psi must have unit weighted norm");
  double pot = 0.0;
  for (int i = 0; i < grid.n_points; ++i)
    pot += grid.weights[i] * v(grid.points[i]) * psi[i] * psi[i];
  return dirichlet_energy(psi, grid) + pot;
}

}  // namespace evlab
