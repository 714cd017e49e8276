#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace evlab {

/// Symmetry class of a potential; decides which grids and which stability
/// reductions are admissible.
enum class Symmetry { Even1D, Radial, SeparableProduct, General1D };

struct Harmonic {
  double omega = 1.0;  // V(x) = omega^2 |x|^2
};

/// The extremal family V(x) = t_match^{-2} |x - center|^2 + offset.
/// For Radial use the center is the distance of the well from the origin;
/// all radial computations run in coordinates centered at the well.
struct ScaledHarmonic {
  double t_match = 1.0;
  double center = 0.0;
  double offset = 0.0;
};

struct Quartic {
  double a = 1.0;  // a x^4, 1D
};

struct AnharmonicMix {
  double alpha = 1.0;  // alpha x^2 + beta x^4, 1D
  double beta = 1.0;
};

struct DoubleWell {
  double a = 1.0;  // a x^4 - b x^2, 1D
  double b = 1.0;
};

struct AbsPower {
  double p = 1.0;  // |x|^p, p >= 1
};

class Potential;

struct Separable {
  std::vector<Potential> factors;  // one 1D potential per coordinate
};

using Family =
    std::variant<Harmonic, ScaledHarmonic, Quartic, AnharmonicMix, DoubleWell,
                 AbsPower, Separable>;

/// A confining potential from the catalog, together with the symmetry
/// transforms applied to it. The stored value is
///     V(x) = scale^2 * F(scale * x - shift) + offset
/// where F is the core family. Composing translations and rescalings stays
/// inside this representation, so the transform algebra is exact.
class Potential {
 public:
  Potential(Family family, int dimension);

  const Family& family() const { return family_; }
  int dimension() const { return dim_; }
  Symmetry symmetry() const { return sym_; }
  double scale() const { return scale_; }
  double shift() const { return shift_; }
  double offset() const { return offset_; }

  /// Pointwise evaluation. For Radial symmetry the argument is a radius
  /// r >= 0 measured from the potential's own center.
  double operator()(double x) const;

  /// Evaluate at many points (1D coordinates or radii).
  std::vector<double> eval(std::span<const double> points) const;

  /// Evaluate a separable potential at one d-dimensional point.
  double eval_point(std::span<const double> x) const;

  /// Global minimum value of V (closed form per family).
  double min_value() const;

  /// Location of the minimum (1D coordinate; for Radial the distance of the
  /// well from the origin; 0 for most families).
  double center() const;

  /// Curvature frequency estimate used by the automatic grid refinement
  /// policy; an overestimate is safe, an underestimate costs accuracy.
  double curvature_scale() const;

  bool is_separable() const;
  const std::vector<Potential>& factors() const;

  /// Effective 1D factor potentials of a separable product, with the global
  /// rescaling folded in. The global constant offset is reported separately
  /// (it cannot be attributed to a single factor).
  std::vector<Potential> effective_factors() const;

  std::string family_name() const;
  /// Compact deterministic parameter string for reports ("omega=1" etc).
  std::string params_string() const;

 private:
  Family family_;
  int dim_;
  Symmetry sym_;
  double scale_ = 1.0;
  double shift_ = 0.0;
  double offset_ = 0.0;

  friend Potential translate_and_shift(const Potential&, double, double);
  friend Potential rescale(const Potential&, double);
};

/// x -> V(x - a) + kappa. Translations are only representable for 1D
/// symmetry classes; Radial and SeparableProduct potentials accept a = 0.
Potential translate_and_shift(const Potential& v, double a, double kappa);

/// x -> s^2 V(s x), s > 0.
Potential rescale(const Potential& v, double s);

Potential make_harmonic(double omega, int dimension = 1);
Potential make_scaled_harmonic(double t_match, double center = 0.0,
                               double offset = 0.0, int dimension = 1);
Potential make_quartic(double a = 1.0);
Potential make_anharmonic(double alpha, double beta);
Potential make_double_well(double a, double b);
Potential make_abs_power(double p, int dimension = 1);
Potential make_separable(std::vector<Potential> factors);

}  // namespace evlab
