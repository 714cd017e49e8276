#pragma once

#include <string>
#include <vector>

#include "evlab/functionals.hpp"
#include "evlab/grid.hpp"
#include "evlab/potential.hpp"

namespace evlab {

/// A normalized nonnegative trial function sampled on a Line grid.
struct TrialFunction {
  enum class Kind { GaussianExtremal, GroundState, Perturbed };
  Kind kind = Kind::GaussianExtremal;
  std::vector<double> samples;
  double norm_certificate = 0.0;  // weighted norm of the raw samples
  Grid grid;
};

/// The log-Sobolev extremal lambda^{-1/2} e^{-pi (x-c)^2 / (2 lambda^2)}.
TrialFunction make_gaussian_extremal(const Grid& grid, double lambda,
                                     double center);

TrialFunction make_ground_state_trial(const Potential& v, const Grid& grid);

/// Ground state plus amplitude * (mode_index-th excited state), renormalized.
TrialFunction make_perturbed_trial(const Potential& v, const Grid& grid,
                                   int mode_index, double amplitude);

/// Every intermediate quantity of the stability proof at lambda = sqrt(pi t),
/// T = 1/t, evaluated for the ground state of one 1D potential.
struct ChainReport {
  std::string family;
  std::string params;
  double t = 1.0;
  double lambda = 1.0;  // sqrt(pi t)
  double e0 = 0.0;
  double ln_z = 0.0;
  double deficit = 0.0;
  double t_deficit = 0.0;

  double lsi_stab_term = 0.0;    // inf_b \int (psi0 - gamma_b)^2
  double lsi_stab_scaled = 0.0;  // (pi t)^{-1} * lsi_stab_term
  double b_opt = 0.0;

  double gibbs_l1 = 0.0;     // || psi0^2 - gibbs ||_1
  double gibbs_term = 0.0;   // (2t)^{-1} gibbs_l1^2
  double gauss_l1 = 0.0;     // || psi0^2 - g_{b_opt} ||_1
  double schwarz_lower = 0.0;       // (1/4) gauss_l1^2 <= lsi_stab_term
  double schwarz_slack_min = 0.0;   // worst slack over the scanned shifts
  double triangle_slack = 0.0;      // metric triangle inequality slack
  double s_triangle_bound_sq = 0.0; // (gauss_l1 + gibbs_l1)^2 bounds S^2

  double lsd = 0.0;        // logsob_deficit(psi0, lambda)
  double gibbs_gap = 0.0;  // gibbs_functional(psi0^2) + T ln Z
  double identity_residual = 0.0;  // lsd/pi + t*gibbs_gap - t*deficit
  double chain_slack = 0.0;        // t*deficit - gibbs_l1^2/2
  bool chain_ok = false;           // chain_slack >= -1e-6

  NumericsReport numerics;
};

ChainReport proof_chain_report(const Potential& v, double t,
                               const NumericsConfig& numerics);

}  // namespace evlab
