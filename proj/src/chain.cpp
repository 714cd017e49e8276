#include "evlab/chain.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "evlab/eigensolve.hpp"
#include "evlab/errors.hpp"
#include "evlab/quadrature.hpp"

namespace evlab {

namespace {

TrialFunction normalized_trial(TrialFunction::Kind kind,
                               std::vector<double> samples, const Grid& grid) {
  TrialFunction tf;
  tf.kind = kind;
  tf.grid = grid;
  const double norm = std::sqrt(weighted_norm_sq(samples, grid));
  if (!(norm > 0)) throw NumericalError("trial function: zero norm");
  tf.norm_certificate = norm;
  for (double& x : samples) x /= norm;
  tf.samples = std::move(samples);
  return tf;
}

}  // namespace

TrialFunction make_gaussian_extremal(const Grid& grid, double lambda,
                                     double center) {
  if (grid.kind != Grid::Kind::Line)
    throw std::invalid_argument("make_gaussian_extremal: Line grids only");
  if (!(lambda > 0))
    throw std::invalid_argument("make_gaussian_extremal: lambda > 0");
  const double pi = std::numbers::pi;
  std::vector<double> s(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    const double u = grid.points[i] - center;
    s[i] = std::exp(-pi * u * u / (2.0 * lambda * lambda)) / std::sqrt(lambda);
  }
  return normalized_trial(TrialFunction::Kind::GaussianExtremal, std::move(s),
                          grid);
}

TrialFunction make_ground_state_trial(const Potential& v, const Grid& grid) {
  const SpectralResult sr = solve_spectrum(v, grid, 1);
  TrialFunction tf;
  tf.kind = TrialFunction::Kind::GroundState;
  tf.grid = grid;
  tf.samples = sr.ground_state;
  tf.norm_certificate = 1.0;
  return tf;
}

TrialFunction make_perturbed_trial(const Potential& v, const Grid& grid,
                                   int mode_index, double amplitude) {
  if (mode_index < 1)
    throw std::invalid_argument("make_perturbed_trial: mode_index >= 1");
  const TridiagonalOperator op = assemble(v, grid);
  const std::vector<double> evs = lowest_eigenvalues(op, mode_index + 1);
  const SpectralResult gs = ground_state(op, evs[0]);
  const std::vector<double> mode = eigenvector(op, evs[mode_index]);
  std::vector<double> s(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i)
    s[i] = gs.ground_state[i] + amplitude * mode[i];
  return normalized_trial(TrialFunction::Kind::Perturbed, std::move(s), grid);
}

ChainReport proof_chain_report(const Potential& v, double t,
                               const NumericsConfig& numerics) {
  if (!(t > 0)) throw std::invalid_argument("proof_chain_report: t > 0");
  if (v.dimension() != 1)
    throw std::invalid_argument("proof_chain_report: 1D potentials only");

  const double pi = std::numbers::pi;
  const GridSpec spec = resolve_grid_spec(v, t, numerics);
  const Grid grid = build_grid(spec);
  const TridiagonalOperator op = assemble(v, grid);
  const std::vector<double> evs = lowest_eigenvalues(op, 1);
  const SpectralResult gs = ground_state(op, evs[0]);
  const std::vector<double>& psi0 = gs.ground_state;

  ChainReport rep;
  rep.family = v.family_name();
  rep.params = v.params_string();
  rep.t = t;
  rep.lambda = std::sqrt(pi * t);
  rep.e0 = evs[0];
  rep.ln_z = log_partition(v, t, grid);
  rep.deficit =
      rep.e0 + rep.ln_z / t - (1.0 / t) * (1.0 + 0.5 * std::log(pi * t));
  rep.t_deficit = t * rep.deficit;
  rep.numerics.n_points = grid.n_points;
  rep.numerics.radius = spec.radius;
  rep.numerics.residual = gs.residual;

  const LogSobStabilityTerm stab =
      logsob_stability_term(psi0, grid, rep.lambda);
  rep.lsi_stab_term = stab.value;
  rep.lsi_stab_scaled = stab.value / (pi * t);
  rep.b_opt = stab.b_opt;

  std::vector<double> psi2(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) psi2[i] = psi0[i] * psi0[i];
  const DensityOnGrid rho_psi = DensityOnGrid::normalized(psi2, grid);
  const DensityOnGrid gibbs = gibbs_density(v, t, grid);

  rep.gibbs_l1 = l1_distance(rho_psi, gibbs);
  rep.gibbs_term = rep.gibbs_l1 * rep.gibbs_l1 / (2.0 * t);

  const auto l1_to_gaussian = [&](const std::vector<double>& dens, double b) {
    const std::vector<double> g = matched_gaussian(grid, t, b);
    double sum = 0.0;
    for (int i = 0; i < grid.n_points; ++i)
      sum += grid.weights[i] * std::abs(dens[i] - g[i]);
    return sum;
  };
  rep.gauss_l1 = l1_to_gaussian(rho_psi.values, rep.b_opt);
  rep.schwarz_lower = 0.25 * rep.gauss_l1 * rep.gauss_l1;

  // Schwarz step at a deterministic scan of shifts: \int (psi0 - gamma_b)^2
  // dominates (1/4) || psi0^2 - gamma_b^2 ||_1^2 for each of them.
  rep.schwarz_slack_min = std::numeric_limits<double>::infinity();
  const double sq = std::sqrt(t);
  for (const double b : {rep.b_opt, rep.b_opt - 0.5 * sq, rep.b_opt + 0.5 * sq,
                         rep.b_opt - sq, rep.b_opt + sq}) {
    double lhs = 0.0;
    const double gnorm = std::pow(pi * t, -0.25);
    for (int i = 0; i < grid.n_points; ++i) {
      const double u = grid.points[i] - b;
      const double gamma = gnorm * std::exp(-u * u / (2.0 * t));
      const double diff = psi0[i] - gamma;
      lhs += grid.weights[i] * diff * diff;
    }
    const double l1 = l1_to_gaussian(rho_psi.values, b);
    rep.schwarz_slack_min =
        std::min(rep.schwarz_slack_min, lhs - 0.25 * l1 * l1);
  }

  const double tri_lhs = l1_to_gaussian(gibbs.values, rep.b_opt);
  rep.triangle_slack = rep.gauss_l1 + rep.gibbs_l1 - tri_lhs;
  rep.s_triangle_bound_sq =
      (rep.gauss_l1 + rep.gibbs_l1) * (rep.gauss_l1 + rep.gibbs_l1);

  rep.lsd = logsob_deficit(psi0, grid, rep.lambda);
  rep.gibbs_gap = gibbs_functional(rho_psi, v, 1.0 / t) + rep.ln_z / t;
  rep.identity_residual = rep.lsd / pi + t * rep.gibbs_gap - rep.t_deficit;
  rep.chain_slack = rep.t_deficit - 0.5 * rep.gibbs_l1 * rep.gibbs_l1;
  rep.chain_ok = rep.chain_slack >= -1e-6;
  return rep;
}

}  // namespace evlab
