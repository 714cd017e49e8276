#include "evlab/potential.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace evlab {

namespace {

double core_eval(const Family& f, double x);

struct CoreEval {
  double x;
  double operator()(const Harmonic& h) const { return h.omega * h.omega * x * x; }
  double operator()(const ScaledHarmonic& s) const {
    const double u = x - s.center;
    return u * u / (s.t_match * s.t_match) + s.offset;
  }
  double operator()(const Quartic& q) const { return q.a * x * x * x * x; }
  double operator()(const AnharmonicMix& m) const {
    const double x2 = x * x;
    return m.alpha * x2 + m.beta * x2 * x2;
  }
  double operator()(const DoubleWell& w) const {
    const double x2 = x * x;
    return w.a * x2 * x2 - w.b * x2;
  }
  double operator()(const AbsPower& p) const { return std::pow(std::abs(x), p.p); }
  double operator()(const Separable& s) const {
    // 1D slice through a separable product only makes sense for one factor;
    // joint evaluation goes through eval_point.
    double sum = 0.0;
    for (const auto& f : s.factors) sum += f(x);
    return sum;
  }
};

double core_eval(const Family& f, double x) { return std::visit(CoreEval{x}, f); }

Symmetry natural_symmetry(const Family& f, int dim) {
  if (std::holds_alternative<Separable>(f)) return Symmetry::SeparableProduct;
  if (dim >= 2) return Symmetry::Radial;
  return Symmetry::Even1D;
}

void validate(const Family& f, int dim) {
  if (dim < 1) throw std::invalid_argument("potential: dimension must be >= 1");
  if (const auto* h = std::get_if<Harmonic>(&f)) {
    if (h->omega <= 0) throw std::invalid_argument("Harmonic: omega must be > 0");
  } else if (const auto* s = std::get_if<ScaledHarmonic>(&f)) {
    if (s->t_match <= 0) throw std::invalid_argument("ScaledHarmonic: t_match must be > 0");
  } else if (const auto* q = std::get_if<Quartic>(&f)) {
    if (q->a <= 0) throw std::invalid_argument("Quartic: a must be > 0");
    if (dim != 1) throw std::invalid_argument("Quartic: 1D only");
  } else if (const auto* m = std::get_if<AnharmonicMix>(&f)) {
    if (m->alpha <= 0 || m->beta <= 0)
      throw std::invalid_argument("AnharmonicMix: alpha, beta must be > 0");
    if (dim != 1) throw std::invalid_argument("AnharmonicMix: 1D only");
  } else if (const auto* w = std::get_if<DoubleWell>(&f)) {
    if (w->a <= 0 || w->b <= 0)
      throw std::invalid_argument("DoubleWell: a, b must be > 0");
    if (dim != 1) throw std::invalid_argument("DoubleWell: 1D only");
  } else if (const auto* p = std::get_if<AbsPower>(&f)) {
    if (p->p < 1) throw std::invalid_argument("AbsPower: p must be >= 1");
  } else if (const auto* sep = std::get_if<Separable>(&f)) {
    if (sep->factors.empty())
      throw std::invalid_argument("Separable: needs at least one factor");
    int total = 0;
    for (const auto& fac : sep->factors) {
      if (fac.dimension() != 1)
        throw std::invalid_argument("Separable: factors must be 1D");
      total += 1;
    }
    if (total != dim)
      throw std::invalid_argument("Separable: dimension must equal factor count");
  }
}

}  // namespace

Potential::Potential(Family family, int dimension)
    : family_(std::move(family)),
      dim_(dimension),
      sym_(natural_symmetry(family_, dimension)) {
  validate(family_, dim_);
}

double Potential::operator()(double x) const {
  return scale_ * scale_ * core_eval(family_, scale_ * x - shift_) + offset_;
}

std::vector<double> Potential::eval(std::span<const double> points) const {
  std::vector<double> out;
  out.reserve(points.size());
  for (double x : points) {
    if (sym_ == Symmetry::Radial && x < 0)
      throw std::invalid_argument("eval: radial potentials take radii r >= 0");
    out.push_back((*this)(x));
  }
  return out;
}

double Potential::eval_point(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw std::invalid_argument("eval_point: dimension mismatch");
  if (const auto* sep = std::get_if<Separable>(&family_)) {
    double sum = offset_;
    std::size_t i = 0;
    for (const auto& f : sep->factors) {
      sum += scale_ * scale_ * f(scale_ * x[i]);
      ++i;
    }
    return sum;
  }
  if (dim_ == 1) return (*this)(x[0]);
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  return (*this)(std::sqrt(r2));
}

double Potential::min_value() const {
  struct MinVisitor {
    double operator()(const Harmonic&) const { return 0.0; }
    double operator()(const ScaledHarmonic& s) const { return s.offset; }
    double operator()(const Quartic&) const { return 0.0; }
    double operator()(const AnharmonicMix&) const { return 0.0; }
    double operator()(const DoubleWell& w) const {
      return -w.b * w.b / (4.0 * w.a);
    }
    double operator()(const AbsPower&) const { return 0.0; }
    double operator()(const Separable& s) const {
      double sum = 0.0;
      for (const auto& f : s.factors) sum += f.min_value();
      return sum;
    }
  };
  return scale_ * scale_ * std::visit(MinVisitor{}, family_) + offset_;
}

double Potential::center() const {
  struct CenterVisitor {
    double operator()(const ScaledHarmonic& s) const { return s.center; }
    double operator()(const Separable&) const { return 0.0; }
    template <class T>
    double operator()(const T&) const {
      return 0.0;
    }
  };
  // V(x) = s^2 F(s x - a): core center c maps to (c + a) / s.
  return (std::visit(CenterVisitor{}, family_) + shift_) / scale_;
}

double Potential::curvature_scale() const {
  struct CurvVisitor {
    double operator()(const Harmonic& h) const { return h.omega; }
    double operator()(const ScaledHarmonic& s) const { return 1.0 / s.t_match; }
    double operator()(const Quartic& q) const { return 2.0 * std::cbrt(q.a); }
    double operator()(const AnharmonicMix& m) const {
      return std::sqrt(m.alpha) + 2.0 * std::cbrt(m.beta);
    }
    double operator()(const DoubleWell& w) const {
      return std::sqrt(2.0 * w.b) + 2.0 * std::cbrt(w.a);
    }
    double operator()(const AbsPower& p) const { return std::max(1.0, p.p); }
    double operator()(const Separable& s) const {
      double m = 0.0;
      for (const auto& f : s.factors) m = std::max(m, f.curvature_scale());
      return m;
    }
  };
  return scale_ * scale_ * std::visit(CurvVisitor{}, family_);
}

bool Potential::is_separable() const {
  return std::holds_alternative<Separable>(family_);
}

const std::vector<Potential>& Potential::factors() const {
  return std::get<Separable>(family_).factors;
}

std::vector<Potential> Potential::effective_factors() const {
  std::vector<Potential> out;
  for (const auto& f : factors()) out.push_back(rescale(f, scale_));
  return out;
}

std::string Potential::family_name() const {
  struct NameVisitor {
    std::string operator()(const Harmonic&) const { return "Harmonic"; }
    std::string operator()(const ScaledHarmonic&) const { return "ScaledHarmonic"; }
    std::string operator()(const Quartic&) const { return "Quartic"; }
    std::string operator()(const AnharmonicMix&) const { return "AnharmonicMix"; }
    std::string operator()(const DoubleWell&) const { return "DoubleWell"; }
    std::string operator()(const AbsPower&) const { return "AbsPower"; }
    std::string operator()(const Separable&) const { return "Separable"; }
  };
  return std::visit(NameVisitor{}, family_);
}

namespace {
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

std::string Potential::params_string() const {
  struct ParamVisitor {
    std::string operator()(const Harmonic& h) const { return "omega=" + num(h.omega); }
    std::string operator()(const ScaledHarmonic& s) const {
      return "t_match=" + num(s.t_match) + ";center=" + num(s.center) +
             ";offset=" + num(s.offset);
    }
    std::string operator()(const Quartic& q) const { return "a=" + num(q.a); }
    std::string operator()(const AnharmonicMix& m) const {
      return "alpha=" + num(m.alpha) + ";beta=" + num(m.beta);
    }
    std::string operator()(const DoubleWell& w) const {
      return "a=" + num(w.a) + ";b=" + num(w.b);
    }
    std::string operator()(const AbsPower& p) const { return "p=" + num(p.p); }
    std::string operator()(const Separable& s) const {
      std::string out = "factors=" + std::to_string(s.factors.size());
      return out;
    }
  };
  std::string core = std::visit(ParamVisitor{}, family_);
  if (scale_ != 1.0) core += ";scale=" + num(scale_);
  if (shift_ != 0.0) core += ";trans=" + num(shift_);
  if (offset_ != 0.0) core += ";const=" + num(offset_);
  return core;
}

Potential translate_and_shift(const Potential& v, double a, double kappa) {
  if (a != 0.0 &&
      (v.sym_ == Symmetry::Radial || v.sym_ == Symmetry::SeparableProduct))
    throw std::invalid_argument(
        "translate_and_shift: only 1D potentials can be translated");
  Potential out = v;
  out.shift_ += v.scale_ * a;
  out.offset_ += kappa;
  return out;
}

Potential rescale(const Potential& v, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("rescale: s must be > 0");
  Potential out = v;
  out.scale_ = v.scale_ * s;
  out.offset_ = v.offset_ * s * s;
  // V_s(x) = s^2 V(s x): the stored translation is already in core
  // coordinates, so it is unchanged.
  return out;
}

Potential make_harmonic(double omega, int dimension) {
  return Potential(Harmonic{omega}, dimension);
}

Potential make_scaled_harmonic(double t_match, double center, double offset,
                               int dimension) {
  return Potential(ScaledHarmonic{t_match, center, offset}, dimension);
}

Potential make_quartic(double a) { return Potential(Quartic{a}, 1); }

Potential make_anharmonic(double alpha, double beta) {
  return Potential(AnharmonicMix{alpha, beta}, 1);
}

Potential make_double_well(double a, double b) {
  return Potential(DoubleWell{a, b}, 1);
}

Potential make_abs_power(double p, int dimension) {
  return Potential(AbsPower{p}, dimension);
}

Potential make_separable(std::vector<Potential> factors) {
  const int d = static_cast<int>(factors.size());
  return Potential(Separable{std::move(factors)}, d);
}

}  // namespace evlab
