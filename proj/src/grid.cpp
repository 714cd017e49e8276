#include "evlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "evlab/errors.hpp"

namespace evlab {

bool same_grid(const Grid& a, const Grid& b) {
  return a.kind == b.kind && a.dimension == b.dimension && a.left == b.left &&
         a.right == b.right && a.n_points == b.n_points;
}

double unit_sphere_area(int d) {
  if (d < 1) throw std::invalid_argument("unit_sphere_area: d >= 1");
  return 2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
}

Grid build_line_grid(double left, double right, int n) {
  if (n < 64) throw std::invalid_argument("build_grid: n must be >= 64");
  if (!(right > left)) throw std::invalid_argument("build_grid: empty interval");
  Grid g;
  g.kind = Grid::Kind::Line;
  g.dimension = 1;
  g.left = left;
  g.right = right;
  g.n_points = n;
  g.spacing = (right - left) / (n - 1);
  g.points.resize(n);
  g.weights.assign(n, g.spacing);
  for (int i = 0; i < n; ++i) g.points[i] = left + i * g.spacing;
  g.points[n - 1] = right;
  g.weights.front() *= 0.5;
  g.weights.back() *= 0.5;
  return g;
}

Grid build_radial_grid(double rmax, int n, int dimension) {
  if (n < 64) throw std::invalid_argument("build_grid: n must be >= 64");
  if (dimension < 2)
    throw std::invalid_argument("build_grid: radial grids need d >= 2");
  if (!(rmax > 0)) throw std::invalid_argument("build_grid: rmax must be > 0");
  Grid g;
  g.kind = Grid::Kind::Radial;
  g.dimension = dimension;
  g.left = 0.0;
  g.right = rmax;
  g.n_points = n;
  g.spacing = rmax / (n - 1);
  g.points.resize(n);
  g.weights.resize(n);
  const double area = unit_sphere_area(dimension);
  for (int i = 0; i < n; ++i) {
    const double r = i * g.spacing;
    g.points[i] = r;
    g.weights[i] = area * std::pow(r, dimension - 1) * g.spacing;
  }
  g.points[n - 1] = rmax;
  g.weights.front() *= 0.5;
  g.weights.back() *= 0.5;
  return g;
}

double truncation_radius(const Potential& v, double t, double epsilon) {
  if (!(t > 0)) throw std::invalid_argument("truncation_radius: t must be > 0");
  if (!(epsilon > 0 && epsilon < 1))
    throw std::invalid_argument("truncation_radius: epsilon in (0,1)");

  const double big = std::log(1.0 / epsilon);
  const double threshold =
      v.min_value() + (v.dimension() / t) * big + 2.0 * big / t;
  const double c = v.center();
  const bool radial = v.symmetry() == Symmetry::Radial;

  const auto cleared = [&](double r) {
    if (radial) return v(r) >= threshold;
    return v(c + r) >= threshold && v(c - r) >= threshold;
  };

  double radius = 1.0;
  int doublings = 0;
  while (!cleared(radius)) {
    radius *= 2.0;
    if (++doublings > 1024)
      throw NumericalError("truncation_radius: potential does not confine");
  }
  // Bisect down to the crossing; catalog tails are monotone past the wells.
  double lo = doublings == 0 ? 0.0 : radius / 2.0;
  double hi = radius;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cleared(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

namespace {

int make_odd(int n) { return n % 2 == 0 ? n + 1 : n; }

int auto_points(const Potential& v, double span, bool radial) {
  // Error model for the three-point stencil: the ground-energy defect is
  // about h^2 * omega^2 / 16 for a well of curvature frequency omega.
  constexpr double kEnergyTolerance = 2e-8;
  const double omega = std::max(v.curvature_scale(), 1e-6);
  const double h = 4.0 * std::sqrt(kEnergyTolerance) / omega;
  const int base = radial ? 2000 : 2001;
  int n = static_cast<int>(std::ceil(span / h)) + 1;
  n = std::clamp(n, base, 240001);
  return radial ? n : make_odd(n);
}

}  // namespace

GridSpec resolve_grid_spec(const Potential& v, double t,
                           const NumericsConfig& numerics) {
  GridSpec spec;
  const bool radial = v.symmetry() == Symmetry::Radial;
  spec.kind = radial ? Grid::Kind::Radial : Grid::Kind::Line;
  spec.dimension = v.dimension();
  spec.center = radial ? 0.0 : v.center();
  spec.radius = numerics.radius > 0
                    ? numerics.radius
                    : truncation_radius(v, t, numerics.epsilon);

  const double span = radial ? spec.radius : 2.0 * spec.radius;
  if (numerics.n_points == NumericsConfig::kAutoPoints) {
    spec.n_points = auto_points(v, span, radial);
  } else if (numerics.n_points == NumericsConfig::kDefaultPoints) {
    spec.n_points = radial ? 2000 : 2001;
  } else {
    if (numerics.n_points < 64)
      throw std::invalid_argument("numerics: n_points must be >= 64");
    spec.n_points = numerics.n_points;
  }
  return spec;
}

Grid build_grid(const GridSpec& spec) {
  if (spec.kind == Grid::Kind::Radial)
    return build_radial_grid(spec.radius, spec.n_points, spec.dimension);
  return build_line_grid(spec.center - spec.radius, spec.center + spec.radius,
                         spec.n_points);
}

}  // namespace evlab
