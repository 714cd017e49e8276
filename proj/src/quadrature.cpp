#include "evlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "evlab/errors.hpp"

namespace evlab {

namespace {
constexpr double kZeroDensityFloor = 1e-300;

void check_length(std::size_t got, const Grid& grid, const char* who) {
  if (got != static_cast<std::size_t>(grid.n_points))
    throw std::invalid_argument(std::string(who) + ": length mismatch with grid");
}
}  // namespace

DensityOnGrid DensityOnGrid::normalized(std::vector<double> values, Grid grid) {
  check_length(values.size(), grid, "DensityOnGrid");
  double mass = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0) {
      if (values[i] < -1e-12)
        throw std::invalid_argument("DensityOnGrid: negative values");
      values[i] = 0.0;
    }
    mass += grid.weights[i] * values[i];
  }
  if (!(mass > 0) || !std::isfinite(mass))
    throw NumericalError("DensityOnGrid: mass is zero or not finite");
  for (double& v : values) v /= mass;
  return DensityOnGrid{std::move(values), std::move(grid)};
}

double integrate(std::span<const double> values, const Grid& grid) {
  check_length(values.size(), grid, "integrate");
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    sum += grid.weights[i] * values[i];
  return sum;
}

double log_partition(const Potential& v, double t, const Grid& grid) {
  if (!(t > 0)) throw std::invalid_argument("log_partition: t must be > 0");
  const int n = grid.n_points;
  std::vector<double> tv(n);
  double shift = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    tv[i] = t * v(grid.points[i]);
    shift = std::min(shift, tv[i]);
  }
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    sum += grid.weights[i] * std::exp(-(tv[i] - shift));
  if (!(sum > 0))
    throw NumericalError("log_partition: Gibbs weights underflow; grid and (V, t) inconsistent");
  return std::log(sum) - shift;
}

DensityOnGrid gibbs_density(const Potential& v, double t, const Grid& grid) {
  const int n = grid.n_points;
  std::vector<double> tv(n);
  double shift = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    tv[i] = t * v(grid.points[i]);
    shift = std::min(shift, tv[i]);
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = std::exp(-(tv[i] - shift));
  return DensityOnGrid::normalized(std::move(w), grid);
}

double l1_distance(const DensityOnGrid& rho1, const DensityOnGrid& rho2) {
  if (!same_grid(rho1.grid, rho2.grid))
    throw std::invalid_argument("l1_distance: grid mismatch");
  double sum = 0.0;
  for (int i = 0; i < rho1.grid.n_points; ++i)
    sum += rho1.grid.weights[i] * std::abs(rho1.values[i] - rho2.values[i]);
  return sum;
}

double relative_entropy(const DensityOnGrid& rho, const DensityOnGrid& rho0) {
  if (!same_grid(rho.grid, rho0.grid))
    throw std::invalid_argument("relative_entropy: grid mismatch");
  double sum = 0.0;
  for (int i = 0; i < rho.grid.n_points; ++i) {
    const double p = rho.values[i];
    if (p == 0.0) continue;
    const double q = rho0.values[i];
    if (q < kZeroDensityFloor)
      return std::numeric_limits<double>::infinity();
    sum += rho.grid.weights[i] * p * std::log(p / q);
  }
  return sum;
}

double weighted_norm_sq(std::span<const double> psi, const Grid& grid) {
  check_length(psi.size(), grid, "weighted_norm_sq");
  double sum = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i)
    sum += grid.weights[i] * psi[i] * psi[i];
  return sum;
}

double dirichlet_energy(std::span<const double> psi, const Grid& grid) {
  check_length(psi.size(), grid, "dirichlet_energy");
  const double h = grid.spacing;
  double sum = 0.0;
  if (grid.kind == Grid::Kind::Line) {
    for (int i = 0; i + 1 < grid.n_points; ++i) {
      const double d = psi[i + 1] - psi[i];
      sum += d * d / h;
    }
  } else {
    const double area = unit_sphere_area(grid.dimension);
    for (int i = 0; i + 1 < grid.n_points; ++i) {
      const double rmid = 0.5 * (grid.points[i] + grid.points[i + 1]);
      const double d = psi[i + 1] - psi[i];
      sum += d * d / h * area * std::pow(rmid, grid.dimension - 1);
    }
  }
  return sum;
}

double entropy_term(std::span<const double> psi, const Grid& grid) {
  const double norm = weighted_norm_sq(psi, grid);
  if (std::abs(norm - 1.0) > 1e-6)
    throw std::invalid_argument("entropy_term: psi must have unit weighted norm");
  double sum = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double p = psi[i] * psi[i];
    if (p > 0.0) sum += grid.weights[i] * p * std::log(p);
  }
  return sum;
}

}  // namespace evlab
