#pragma once

#include <vector>

#include "evlab/potential.hpp"

namespace evlab {

/// Uniform truncated grid with trapezoidal integration weights. Line grids
/// carry the measure dx on [left, right]; Radial grids carry
/// |S^{d-1}| r^{d-1} dr on [0, rmax].
struct Grid {
  enum class Kind { Line, Radial };

  Kind kind = Kind::Line;
  int dimension = 1;  // ambient dimension (1 for Line, >= 2 for Radial)
  double left = 0.0;
  double right = 0.0;
  int n_points = 0;
  double spacing = 0.0;
  std::vector<double> points;
  std::vector<double> weights;

  double length() const { return right - left; }
};

bool same_grid(const Grid& a, const Grid& b);

/// Surface area of the unit sphere S^{d-1} in R^d.
double unit_sphere_area(int d);

Grid build_line_grid(double left, double right, int n);
Grid build_radial_grid(double rmax, int n, int dimension);

/// Truncation radius around the potential's center: the smallest R with
/// V >= V_min + (d/t) ln(1/eps) + 2 ln(1/eps)/t outside the radius, located
/// by outward doubling and bisection. Keeps the relative Gibbs tail outside
/// the box below eps for every catalog family.
double truncation_radius(const Potential& v, double t, double epsilon);

/// Resolved per-evaluation grid parameters.
struct GridSpec {
  double radius = 0.0;   // half-width around the center (Line) or rmax (Radial)
  double center = 0.0;   // Line grids span [center - radius, center + radius]
  int n_points = 0;
  Grid::Kind kind = Grid::Kind::Line;
  int dimension = 1;
};

/// Numerical policy for one (V, t) evaluation. n_points: explicit value,
/// kDefaultPoints for the stock resolution (2001 Line / 2000 Radial), or
/// kAutoPoints for the error-targeted choice based on the potential's
/// curvature scale.
struct NumericsConfig {
  static constexpr int kDefaultPoints = 0;
  static constexpr int kAutoPoints = -1;

  int n_points = kDefaultPoints;
  double epsilon = 1e-12;
  double radius = 0.0;  // 0 = automatic truncation search
  bool refine = false;
};

GridSpec resolve_grid_spec(const Potential& v, double t,
                           const NumericsConfig& numerics);

Grid build_grid(const GridSpec& spec);

}  // namespace evlab
