#include "evlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "evlab/chain.hpp"
#include "evlab/functionals.hpp"
#include "evlab/quadrature.hpp"

namespace evlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void record(SuiteResult& suite, double margin, double tolerance) {
  ++suite.cases;
  if (std::isinf(margin) && margin > 0) return;  // +inf slack always passes
  suite.worst_margin = std::min(suite.worst_margin, margin);
  if (margin < -tolerance) ++suite.failures;
}

Grid random_line_grid(SplitRng& rng) {
  const int n = 65 + 2 * rng.uniform_int(0, 96);
  const double left = rng.uniform(-2.0, 0.0);
  const double right = left + rng.uniform(1.0, 4.0);
  return build_line_grid(left, right, n);
}

std::vector<double> random_density_values(SplitRng& rng, int n,
                                          bool allow_zeros) {
  std::vector<double> v(n);
  const double p = rng.uniform(0.5, 3.0);
  for (int i = 0; i < n; ++i) v[i] = std::pow(rng.uniform(), p);
  if (allow_zeros && rng.uniform() < 0.3) {
    const int a = rng.uniform_int(0, n - 1);
    const int b = std::min(n - 1, a + rng.uniform_int(0, n / 4));
    for (int i = a; i <= b; ++i) v[i] = 0.0;
  }
  return v;
}

}  // namespace

bool VerifySummary::all_passed() const {
  return std::all_of(suites.begin(), suites.end(),
                     [](const SuiteResult& s) { return s.passed(); });
}

std::vector<SweepPotential> default_catalog() {
  std::vector<SweepPotential> out;
  out.push_back({make_harmonic(1.0), false});
  out.push_back({make_quartic(1.0), false});
  out.push_back({make_anharmonic(1.0, 1.0), false});
  out.push_back({make_double_well(1.0, 2.0), false});
  out.push_back({make_abs_power(1.0), false});
  out.push_back({make_scaled_harmonic(1.0), true});
  return out;
}

std::vector<double> default_t_values() { return {0.25, 0.5, 1.0, 2.0, 4.0}; }

Potential SweepPotential::at(double t) const {
  if (!match_t) return base;
  const auto& sh = std::get<ScaledHarmonic>(base.family());
  return make_scaled_harmonic(t, sh.center, sh.offset, base.dimension());
}

SuiteResult verify_ckp(std::uint64_t seed, int cases) {
  SuiteResult suite{.name = "ckp"};
  SplitRng rng(seed ^ 0x11ull);
  int infinite = 0;
  for (int c = 0; c < cases; ++c) {
    Grid g = random_line_grid(rng);
    auto rho = DensityOnGrid::normalized(
        random_density_values(rng, g.n_points, true), g);
    auto rho0 = DensityOnGrid::normalized(
        random_density_values(rng, g.n_points, c % 12 == 0), g);
    const double gap = ckp_gap(rho, rho0);
    if (std::isinf(gap)) ++infinite;
    record(suite, gap, 1e-10);
  }
  suite.note = std::to_string(infinite) + " cases with +inf entropy";
  return suite;
}

SuiteResult verify_relative_entropy(std::uint64_t seed, int cases) {
  SuiteResult suite{.name = "relative_entropy"};
  SplitRng rng(seed ^ 0x22ull);
  for (int c = 0; c < cases; ++c) {
    Grid g = random_line_grid(rng);
    auto rho = DensityOnGrid::normalized(
        random_density_values(rng, g.n_points, true), g);
    if (c % 10 == 0) {
      // identity pair: relative entropy must vanish
      const double self = relative_entropy(rho, rho);
      record(suite, self, 1e-10);
      record(suite, -std::abs(self), 1e-12);
      continue;
    }
    auto rho0 = DensityOnGrid::normalized(
        random_density_values(rng, g.n_points, false), g);
    record(suite, relative_entropy(rho, rho0), 1e-10);
  }
  return suite;
}

SuiteResult verify_schwarz_step(std::uint64_t seed, int cases) {
  SuiteResult suite{.name = "schwarz_step"};
  SplitRng rng(seed ^ 0x33ull);
  for (int c = 0; c < cases; ++c) {
    Grid g = random_line_grid(rng);
    auto f = DensityOnGrid::normalized(
        random_density_values(rng, g.n_points, true), g);
    auto h = DensityOnGrid::normalized(
        random_density_values(rng, g.n_points, true), g);
    record(suite, sqrt_l1_gap(f, h), 1e-10);
  }
  return suite;
}

SuiteResult verify_gibbs_principle(std::uint64_t seed, int cases) {
  SuiteResult suite{.name = "gibbs_principle"};
  SplitRng rng(seed ^ 0x44ull);
  const std::vector<Potential> pots = {make_harmonic(1.0), make_quartic(1.0),
                                       make_double_well(1.0, 2.0),
                                       make_abs_power(1.5)};
  NumericsConfig numerics;
  numerics.n_points = 1025;
  for (int c = 0; c < cases; ++c) {
    const Potential& v = pots[c % pots.size()];
    const double t = rng.uniform(0.25, 4.0);
    const double T = 1.0 / t;
    const Grid grid = build_grid(resolve_grid_spec(v, t, numerics));
    const double ln_z = log_partition(v, t, grid);
    const DensityOnGrid gibbs = gibbs_density(v, t, grid);

    auto rho = DensityOnGrid::normalized(
        random_density_values(rng, grid.n_points, true), grid);
    record(suite, gibbs_functional(rho, v, T) + T * ln_z, 1e-8);
    // equality exactly at the Gibbs density
    const double at_gibbs = gibbs_functional(gibbs, v, T) + T * ln_z;
    record(suite, -std::abs(at_gibbs), 1e-6);
  }
  return suite;
}

namespace {

std::vector<double> random_lsi_trial(SplitRng& rng, const Grid& grid,
                                     double lambda) {
  const int n = grid.n_points;
  std::vector<double> psi(n, 0.0);
  if (rng.uniform() < 0.25) {  // rough trial: huge Dirichlet term
    for (int i = 0; i < n; ++i) psi[i] = rng.uniform(0.0, 1.0);
    return psi;
  }
  // Smooth bump mixtures, kept away from the extremal width
  // tau* = lambda / sqrt(pi) so the continuum deficit stays macroscopic.
  const double tau_star = lambda / std::sqrt(std::numbers::pi);
  const int k = rng.uniform_int(1, 3);
  double prev_center = 0.0, prev_tau = 0.0;
  for (int j = 0; j < k; ++j) {
    double tau;
    if (k == 1) {
      tau = rng.uniform() < 0.5 ? tau_star * rng.uniform(0.45, 0.8)
                                : tau_star * rng.uniform(1.25, 3.0);
    } else {
      tau = tau_star * rng.uniform(0.5, 2.0);
    }
    double center;
    if (j == 0) {
      center = rng.uniform(-2.0, 2.0);
    } else {
      const double gap = 2.0 * (prev_tau + tau);
      center = prev_center + gap + rng.uniform(0.0, 1.0);
    }
    const double amp = rng.uniform(0.5, 1.5);
    for (int i = 0; i < n; ++i) {
      const double u = grid.points[i] - center;
      psi[i] += amp * std::exp(-u * u / (2.0 * tau * tau));
    }
    prev_center = center;
    prev_tau = tau;
  }
  return psi;
}

}  // namespace

SuiteResult verify_logsob(std::uint64_t seed, int random_trials) {
  SuiteResult suite{.name = "logsob"};
  SplitRng rng(seed ^ 0x55ull);
  for (const double lambda : {0.5, 1.0, 2.0}) {
    const Grid grid = build_line_grid(-8.0 * lambda, 8.0 * lambda, 32001);
    const TrialFunction ext = make_gaussian_extremal(grid, lambda, 0.3);
    const double deficit = logsob_deficit(ext.samples, grid, lambda);
    record(suite, 1e-6 - std::abs(deficit), 0.0);  // |deficit| <= 1e-6
    const LogSobStabilityTerm st =
        logsob_stability_term(ext.samples, grid, lambda);
    record(suite, 1e-8 - st.value, 0.0);  // vanishing stability term
  }
  const double lambda = 1.0;
  const Grid grid = build_line_grid(-8.0, 8.0, 32001);
  for (int c = 0; c < random_trials; ++c) {
    std::vector<double> raw = random_lsi_trial(rng, grid, lambda);
    const double norm = std::sqrt(weighted_norm_sq(raw, grid));
    for (double& x : raw) x /= norm;
    record(suite, logsob_deficit(raw, grid, lambda), 1e-8);
  }
  return suite;
}

SuiteResult verify_deficit_nonnegativity(const VerifyOptions& opt) {
  SuiteResult suite{.name = "deficit_nonnegativity"};
  const auto catalog = opt.potentials.empty() ? default_catalog() : opt.potentials;
  const auto ts = opt.t_values.empty() ? default_t_values() : opt.t_values;
  for (const auto& entry : catalog) {
    for (const double t : ts) {
      DeficitReport rep = keller_deficit(entry.at(t), t, opt.numerics);
      if (opt.flip_deficit_sign) rep.deficit = -rep.deficit;
      record(suite, rep.deficit, 1e-7);
    }
  }
  return suite;
}

SuiteResult verify_invariance(const VerifyOptions& opt) {
  SuiteResult suite{.name = "invariance"};
  SplitRng rng(opt.seed ^ 0x66ull);

  // Transform algebra at machine precision.
  const std::vector<Potential> pots = {make_harmonic(1.3), make_quartic(0.7),
                                       make_anharmonic(0.5, 1.2),
                                       make_double_well(1.0, 2.0),
                                       make_abs_power(1.5)};
  for (int c = 0; c < 200; ++c) {
    const Potential& v = pots[c % pots.size()];
    const double a = rng.uniform(-2.0, 2.0);
    const double kappa = rng.uniform(-5.0, 5.0);
    const double s = std::exp(rng.uniform(-1.0, 1.0));
    const double x = rng.uniform(-3.0, 3.0);

    const Potential moved = translate_and_shift(v, a, kappa);
    const double scale0 = 1.0 + std::abs(v(x - a)) + std::abs(kappa);
    record(suite, 1e-12 - std::abs(moved(x) - (v(x - a) + kappa)) / scale0, 0.0);

    const Potential scaled = rescale(v, s);
    const double scale1 = 1.0 + std::abs(v(s * x));
    record(suite,
           1e-12 - std::abs(scaled(x) - s * s * v(s * x)) / (s * s * scale1),
           0.0);

    const Potential back = rescale(scaled, 1.0 / s);
    record(suite, 1e-12 - std::abs(back(x) - v(x)) / (1.0 + std::abs(v(x))),
           0.0);
  }

  // Deficit invariance under translation and constant shift.
  NumericsConfig numerics = opt.numerics;
  for (const auto& [v, t] :
       {std::pair{make_harmonic(1.0), 2.0}, {make_quartic(1.0), 1.0},
        {make_double_well(1.0, 2.0), 0.5}}) {
    const double base = keller_deficit(v, t, numerics).deficit;
    const double moved =
        keller_deficit(translate_and_shift(v, 0.7, 3.0), t, numerics).deficit;
    record(suite, 1e-6 - std::abs(moved - base), 0.0);

    // Scaling covariance deficit(rescale(V,s), t/s^2) = s^2 deficit(V,t).
    for (const double s : {0.5, 2.0}) {
      const double scaled =
          keller_deficit(rescale(v, s), t / (s * s), numerics).deficit;
      const double rel = std::abs(scaled - s * s * base) /
                         std::max(1e-12, std::abs(s * s * base));
      record(suite, 1e-4 - rel, 0.0);
    }
  }
  return suite;
}

SuiteResult verify_golden_thompson(const VerifyOptions& opt) {
  SuiteResult suite{.name = "golden_thompson"};
  const auto catalog = opt.potentials.empty() ? default_catalog() : opt.potentials;
  const auto ts = opt.t_values.empty() ? default_t_values() : opt.t_values;
  NumericsConfig numerics = opt.numerics;
  for (const auto& entry : catalog) {
    for (const double t : ts) {
      const GoldenThompsonResult gt =
          golden_thompson_check(entry.at(t), t, numerics);
      record(suite, gt.rhs - gt.lhs_truncated, 0.0);
    }
  }
  return suite;
}

SuiteResult verify_elementary_inequality(std::uint64_t seed, int cases) {
  SuiteResult suite{.name = "elementary_inequality"};
  SplitRng rng(seed ^ 0x77ull);
  const double e = std::numbers::e;
  for (int c = 0; c < cases; ++c) {
    for (const double p : {1.0, 2.0, 5.0}) {
      const double w = c == 0 ? p : rng.uniform(0.0, 50.0);  // w = p: equality
      const double rhs = std::pow(p / e, p) * std::exp(w);
      const double lhs = std::pow(w, p);
      record(suite, (rhs - lhs) / rhs, 1e-12);
    }
  }
  return suite;
}

VerifySummary run_verification(const VerifyOptions& opt) {
  VerifySummary summary;
  summary.seed = opt.seed;
  summary.suites.push_back(verify_ckp(opt.seed));
  summary.suites.push_back(verify_relative_entropy(opt.seed));
  summary.suites.push_back(verify_schwarz_step(opt.seed));
  summary.suites.push_back(verify_gibbs_principle(opt.seed));
  summary.suites.push_back(verify_logsob(opt.seed));
  summary.suites.push_back(verify_deficit_nonnegativity(opt));
  summary.suites.push_back(verify_invariance(opt));
  summary.suites.push_back(verify_golden_thompson(opt));
  summary.suites.push_back(verify_elementary_inequality(opt.seed));
  return summary;
}

}  // namespace evlab
