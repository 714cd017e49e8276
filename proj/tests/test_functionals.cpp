#include <doctest.h>

#include <cmath>
#include <numbers>

#include "evlab/chain.hpp"
#include "evlab/errors.hpp"
#include "evlab/functionals.hpp"
#include "evlab/oracle.hpp"
#include "evlab/verify.hpp"

using namespace evlab;

namespace {
const NumericsConfig kDefault{};
NumericsConfig auto_numerics() {
  NumericsConfig n;
  n.n_points = NumericsConfig::kAutoPoints;
  return n;
}
}  // namespace

TEST_CASE("keller deficit on the equality family") {
  // V = x^2 coincides with t^-2 x^2 at t = 1.
  const DeficitReport r1 = keller_deficit(make_harmonic(1.0), 1.0, kDefault);
  CHECK(std::abs(r1.deficit) < 2e-5);
  CHECK(r1.deficit >= -r1.numerics.err_estimate);

  // Closed form at t = 2: E0 = 1, lnZ = ln(pi/2)/2.
  const DeficitReport r2 = keller_deficit(make_harmonic(1.0), 2.0, kDefault);
  CHECK(r2.deficit ==
        doctest::Approx(0.5 - 0.5 * std::log(2.0)).epsilon(1e-4));

  // ScaledHarmonic at matching t: zero deficit independent of b and kappa.
  for (const double t : {0.5, 1.0, 2.0})
    for (const int d : {1, 2, 3})
      for (const double b : {0.0, 1.0})
        for (const double kappa : {0.0, 5.0}) {
          const DeficitReport r =
              keller_deficit(make_scaled_harmonic(t, b, kappa, d), t, kDefault);
          CAPTURE(t);
          CAPTURE(d);
          CAPTURE(b);
          CAPTURE(kappa);
          CHECK(std::abs(r.deficit) < 2e-5);
          const auto ref = oracle::harmonic_reference(t, d, {b}, kappa);
          CHECK(r.e0 == doctest::Approx(ref.e0_exact).epsilon(1e-5));
          CHECK(r.ln_z == doctest::Approx(ref.ln_z_exact).epsilon(1e-5));
        }
}

TEST_CASE("keller deficit for separable products") {
  // Two independent 1D wells: energies and partition functions add.
  const Potential sep =
      make_separable({make_harmonic(1.0), make_quartic(1.0)});
  const DeficitReport r = keller_deficit(sep, 1.0, kDefault);
  const DeficitReport rh = keller_deficit(make_harmonic(1.0), 1.0, kDefault);
  const DeficitReport rq = keller_deficit(make_quartic(1.0), 1.0, kDefault);
  CHECK(r.e0 == doctest::Approx(rh.e0 + rq.e0).epsilon(1e-10));
  CHECK(r.ln_z == doctest::Approx(rh.ln_z + rq.ln_z).epsilon(1e-10));
  CHECK(r.deficit == doctest::Approx(rh.deficit + rq.deficit).epsilon(1e-10));
  CHECK(r.dimension == 2);
}

TEST_CASE("refine reports the resolution change") {
  NumericsConfig numerics;
  numerics.refine = true;
  const DeficitReport r = keller_deficit(make_quartic(1.0), 1.0, numerics);
  CHECK(r.numerics.err_estimate > 0.0);
  CHECK(r.numerics.err_estimate < 1e-4);
}

TEST_CASE("stability distance") {
  SUBCASE("equality family: zero distance, b_opt at the center") {
    const StabilityResult s =
        stability_distance(make_scaled_harmonic(1.0, 0.7, 0.0), 1.0, kDefault);
    CHECK(s.available);
    CHECK(s.distance < 1e-6);
    CHECK(s.b_opt == doctest::Approx(0.7).epsilon(1e-4));
  }

  SUBCASE("harmonic at t=2 against the centered-Gaussian closed form") {
    // Gibbs density of e^{-2x^2} is N(0, 1/4); the target is N(0, t/2).
    NumericsConfig fine;
    fine.n_points = 40001;
    const StabilityResult s =
        stability_distance(make_harmonic(1.0), 2.0, fine);
    const double expected = oracle::gaussian_l1_widths(0.5, 1.0);
    CHECK(s.distance == doctest::Approx(expected).epsilon(1e-6));
    CHECK(std::abs(s.b_opt) < 1e-4);
  }

  SUBCASE("translation equivariance") {
    NumericsConfig fine;
    fine.n_points = 8001;
    const Potential base = make_double_well(1.0, 2.0);
    const StabilityResult s0 = stability_distance(base, 1.0, fine);
    const StabilityResult s1 =
        stability_distance(translate_and_shift(base, 1.3, 2.0), 1.0, fine);
    CHECK(s1.distance == doctest::Approx(s0.distance).epsilon(1e-8));
    CHECK(s1.b_opt - s0.b_opt == doctest::Approx(1.3).epsilon(1e-6));
  }

  SUBCASE("radial distances and the bipolar scan") {
    for (const int d : {2, 3}) {
      const StabilityResult s = stability_distance(
          make_scaled_harmonic(1.0, 0.0, 0.0, d), 1.0, kDefault);
      CHECK(s.available);
      CHECK(s.distance < 1e-4);
      CHECK(s.b_opt == doctest::Approx(0.0).epsilon(1e-6));
    }
    // Radial center offsets report through b_opt.
    const StabilityResult off = stability_distance(
        make_scaled_harmonic(1.0, 1.0, 0.0, 3), 1.0, kDefault);
    CHECK(off.b_opt == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(off.distance < 1e-4);
  }

  SUBCASE("unsupported symmetry is rejected") {
    const Potential sep =
        make_separable({make_harmonic(1.0), make_harmonic(1.0)});
    CHECK_THROWS_AS(stability_distance(sep, 1.0, kDefault),
                    std::invalid_argument);
  }
}

TEST_CASE("stability ratio") {
  const DeficitReport rep = evaluate_full(make_harmonic(1.0), 2.0, kDefault);
  REQUIRE(rep.stability.available);
  const double s = rep.stability.distance;
  CHECK(rep.ratio ==
        doctest::Approx(2.0 * (0.5 - 0.5 * std::log(2.0)) / (s * s))
            .epsilon(1e-3));
  CHECK(rep.ratio > 0.0);

  // Equality case: the ratio is marked unavailable.
  const DeficitReport eq = evaluate_full(make_scaled_harmonic(1.0), 1.0, kDefault);
  CHECK(std::isnan(eq.ratio));

  SUBCASE("scale invariance of the ratio") {
    NumericsConfig numerics = auto_numerics();
    const DeficitReport a = evaluate_full(make_quartic(1.0), 1.0, numerics);
    const DeficitReport b =
        evaluate_full(rescale(make_quartic(1.0), 2.0), 0.25, numerics);
    CHECK(b.ratio == doctest::Approx(a.ratio).epsilon(1e-3));
    // deficit scales by s^2 while S is invariant
    CHECK(b.deficit == doctest::Approx(4.0 * a.deficit).epsilon(1e-4));
    CHECK(b.stability.distance ==
          doctest::Approx(a.stability.distance).epsilon(1e-4));
  }
}

TEST_CASE("log-sobolev deficit") {
  const Grid g = build_line_grid(-8.0, 8.0, 32001);

  SUBCASE("vanishes at the extremals") {
    for (const double lambda : {0.5, 1.0, 2.0}) {
      const Grid gl = build_line_grid(-8.0 * lambda, 8.0 * lambda, 32001);
      const TrialFunction ext = make_gaussian_extremal(gl, lambda, 0.0);
      CHECK(std::abs(logsob_deficit(ext.samples, gl, lambda)) < 1e-6);
    }
  }

  SUBCASE("positive away from the extremals") {
    // Smoothed plateau: nearly uniform mass on [-1, 1].
    std::vector<double> psi(g.n_points);
    for (int i = 0; i < g.n_points; ++i) {
      const double x = g.points[i];
      psi[i] = 1.0 / (1.0 + std::exp(8.0 * (std::abs(x) - 1.0)));
    }
    const double norm = std::sqrt(weighted_norm_sq(psi, g));
    for (double& v : psi) v /= norm;
    CHECK(logsob_deficit(psi, g, 1.0) > 0.1);
  }

  SUBCASE("lambda scaling consistency") {
    // The deficit of psi at lambda equals the deficit of the rescaled
    // trial s^{1/2} psi(s x) at lambda = 1, s = lambda.
    const double lambda = 1.7;
    const TrialFunction ext = make_gaussian_extremal(g, 1.0, 0.4);
    std::vector<double> bump(g.n_points);
    for (int i = 0; i < g.n_points; ++i) {
      const double x = g.points[i];
      bump[i] = ext.samples[i] * (1.0 + 0.3 * std::exp(-x * x));
    }
    double nn = std::sqrt(weighted_norm_sq(bump, g));
    for (double& v : bump) v /= nn;
    const double at_lambda = logsob_deficit(bump, g, lambda);

    const Grid gs = build_line_grid(g.left / lambda, g.right / lambda,
                                    g.n_points);
    std::vector<double> scaled(g.n_points);
    for (int i = 0; i < g.n_points; ++i) scaled[i] = std::sqrt(lambda) * bump[i];
    // samples of sqrt(s) psi(s x) on the 1/s grid reuse psi's values
    const double at_one = logsob_deficit(scaled, gs, 1.0);
    CHECK(at_lambda == doctest::Approx(at_one).epsilon(1e-6));
  }

  SUBCASE("rejects non-normalized trials") {
    std::vector<double> bad(g.n_points, 1.0);
    CHECK_THROWS_AS(logsob_deficit(bad, g, 1.0), std::invalid_argument);
  }
}

TEST_CASE("log-sobolev stability term") {
  const Grid g = build_line_grid(-9.0, 9.0, 32001);

  SUBCASE("zero at the extremal") {
    const TrialFunction ext = make_gaussian_extremal(g, 1.0, 0.8);
    const LogSobStabilityTerm st = logsob_stability_term(ext.samples, g, 1.0);
    CHECK(st.value < 1e-8);
    CHECK(st.b_opt == doctest::Approx(0.8).epsilon(1e-3));
  }

  SUBCASE("bounded by the norm expansion") {
    SplitRng rng(17);
    for (int c = 0; c < 20; ++c) {
      std::vector<double> psi(g.n_points);
      for (int i = 0; i < g.n_points; ++i) {
        const double x = g.points[i];
        psi[i] = std::exp(-std::abs(x - rng.uniform(-1.0, 1.0))) +
                 0.2 * rng.uniform();
      }
      const double nn = std::sqrt(weighted_norm_sq(psi, g));
      for (double& v : psi) v /= nn;
      const auto st = logsob_stability_term(psi, g, 1.0);
      CHECK(st.value >= 0.0);
      CHECK(st.value <= 4.0 + 1e-9);
    }
  }

  SUBCASE("strictly positive for the quartic ground state") {
    const double t = 1.0;
    const Grid gq = build_line_grid(-6.0, 6.0, 8001);
    const TrialFunction gs = make_ground_state_trial(make_quartic(1.0), gq);
    const double lambda = std::sqrt(std::numbers::pi * t);
    const auto st = logsob_stability_term(gs.samples, gq, lambda);
    const double lsd = logsob_deficit(gs.samples, gq, lambda);
    CHECK(st.value > 1e-4);
    CHECK(lsd > 1e-4);  // the empirical deficit/term pair is recorded together
  }
}

TEST_CASE("gibbs functional") {
  const Potential v = make_harmonic(1.0);
  NumericsConfig numerics;
  const Grid g = build_grid(resolve_grid_spec(v, 1.0, numerics));
  const double T = 1.0;
  const double ln_z = log_partition(v, 1.0, g);
  const DensityOnGrid gibbs = gibbs_density(v, 1.0, g);

  // The Gibbs density attains -T ln Z.
  CHECK(gibbs_functional(gibbs, v, T) ==
        doctest::Approx(-T * ln_z).epsilon(1e-6));

  // Any other density sits above the infimum.
  SplitRng rng(23);
  for (int c = 0; c < 100; ++c) {
    std::vector<double> vals(g.n_points);
    for (int i = 0; i < g.n_points; ++i)
      vals[i] = std::pow(rng.uniform(), 1.5) *
                std::exp(-std::abs(g.points[i]));
    const auto rho = DensityOnGrid::normalized(vals, g);
    CHECK(gibbs_functional(rho, v, T) >= -T * ln_z - 1e-8);
  }

  // Ground-state density of the matched harmonic equals the Gibbs density.
  const SpectralResult sr = solve_spectrum(v, g, 1);
  std::vector<double> psi2(g.n_points);
  for (int i = 0; i < g.n_points; ++i)
    psi2[i] = sr.ground_state[i] * sr.ground_state[i];
  const auto rho0 = DensityOnGrid::normalized(psi2, g);
  CHECK(gibbs_functional(rho0, v, T) == doctest::Approx(-ln_z).epsilon(1e-5));
}

TEST_CASE("ckp gap") {
  const Grid g = build_line_grid(0.0, 1.0, 101);
  std::vector<double> p(101, 0.0), q(101, 0.0);
  p[20] = 0.5;
  p[80] = 0.5;
  q[20] = 0.25;
  q[80] = 0.75;
  const auto dp = DensityOnGrid::normalized(p, g);
  const auto dq = DensityOnGrid::normalized(q, g);
  CHECK(ckp_gap(dp, dp) == doctest::Approx(0.0));
  CHECK(ckp_gap(dp, dq) ==
        doctest::Approx(0.5 * std::log(4.0 / 3.0) - 0.125).epsilon(1e-12));

  SplitRng rng(29);
  double worst = 1.0;
  for (int c = 0; c < 1000; ++c) {
    const int n = 65 + 2 * rng.uniform_int(0, 50);
    const Grid s = build_line_grid(0.0, 1.0, n);
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = std::pow(rng.uniform(), 2.0);
      b[i] = 0.01 + rng.uniform();
    }
    const double gap =
        ckp_gap(DensityOnGrid::normalized(a, s), DensityOnGrid::normalized(b, s));
    worst = std::min(worst, gap);
  }
  CHECK(worst >= -1e-10);
}

TEST_CASE("schwarz step gap") {
  const Grid g = build_line_grid(0.0, 2.0, 201);
  const auto f = DensityOnGrid::normalized(std::vector<double>(201, 1.0), g);
  CHECK(sqrt_l1_gap(f, f) == doctest::Approx(0.0));

  // Disjoint unit masses: 2 sqrt(2) - 2.
  std::vector<double> a(201, 0.0), b(201, 0.0);
  for (int i = 0; i < 201; ++i) (g.points[i] < 1.0 ? a : b)[i] = 1.0;
  CHECK(sqrt_l1_gap(DensityOnGrid::normalized(a, g),
                    DensityOnGrid::normalized(b, g)) ==
        doctest::Approx(2.0 * std::sqrt(2.0) - 2.0).epsilon(1e-9));

  SplitRng rng(31);
  for (int c = 0; c < 1000; ++c) {
    std::vector<double> x(201), y(201);
    for (int i = 0; i < 201; ++i) {
      x[i] = std::pow(rng.uniform(), 1.3);
      y[i] = std::pow(rng.uniform(), 0.7);
    }
    CHECK(sqrt_l1_gap(DensityOnGrid::normalized(x, g),
                      DensityOnGrid::normalized(y, g)) >= -1e-10);
  }
}

TEST_CASE("golden-thompson check") {
  const GoldenThompsonResult gt =
      golden_thompson_check(make_harmonic(1.0), 1.0, kDefault);
  // Geometric series over E_n = 2n + 1: trace = 1 / (2 sinh 1).
  CHECK(gt.lhs_truncated ==
        doctest::Approx(1.0 / (2.0 * std::sinh(1.0))).epsilon(1e-5));
  CHECK(gt.rhs == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(gt.lhs_truncated <= gt.rhs);
  CHECK(gt.sharp_vs_gt_margin ==
        doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-14));
  CHECK(!gt.warning);

  const GoldenThompsonResult gq =
      golden_thompson_check(make_quartic(1.0), 1.0, kDefault);
  CHECK(gq.lhs_truncated <= gq.rhs);

  // The margin constant does not depend on t or d.
  for (const double t : {0.25, 3.0}) {
    const auto g2 = golden_thompson_check(make_harmonic(1.0, 2), t, kDefault);
    CHECK(g2.sharp_vs_gt_margin ==
          doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-13));
    CHECK(g2.lhs_truncated <= g2.rhs);
  }
}

TEST_CASE("full evaluation assembles every block") {
  const DeficitReport rep = evaluate_full(make_quartic(1.0), 1.0, kDefault);
  CHECK(rep.family == "Quartic");
  CHECK(rep.deficit > 0.0);
  CHECK(rep.stability.available);
  CHECK(rep.stability.distance > 1e-3);
  CHECK(rep.ratio > 0.0);
  CHECK(rep.gt_available);
  CHECK(rep.gt.lhs_truncated <= rep.gt.rhs);
  CHECK(rep.numerics.n_points == 2001);
}
