#include <doctest.h>

#include <cmath>
#include <numbers>

#include "evlab/eigensolve.hpp"
#include "evlab/errors.hpp"
#include "evlab/quadrature.hpp"
#include "evlab/verify.hpp"

using namespace evlab;

// Fine-grid Richardson references computed ahead of the build with an
// independent tridiagonal solver (three refinement levels agree to ~1e-10).
namespace {
constexpr double kQuarticE0 = 1.06036209048;
constexpr double kAnharmonicE0 = 1.39235164150;
constexpr double kDoubleWellE0 = 0.13778584822;
constexpr double kAbsE0 = 1.0187929716474715;  // Airy: first zero of Ai'
}  // namespace

TEST_CASE("harmonic ground energy") {
  const Grid g = build_line_grid(-10.0, 10.0, 2001);
  const TridiagonalOperator op = assemble(make_harmonic(1.0), g);
  const auto evs = lowest_eigenvalues(op, 1);
  CHECK(std::abs(evs[0] - 1.0) < 1e-5);
}

TEST_CASE("dirichlet laplacian on [0, pi]") {
  // Zero potential, walls at both ends: lowest mode sin(x), eigenvalue 1.
  const Grid g = build_line_grid(0.0, std::numbers::pi, 1001);
  const TridiagonalOperator op = assemble(make_scaled_harmonic(1e6), g);
  // t_match -> infinity flattens the well; emulate V = 0 with a huge match.
  const auto evs = lowest_eigenvalues(op, 1);
  CHECK(std::abs(evs[0] - 1.0) < 1e-4);
}

TEST_CASE("radial harmonic d=3") {
  const Grid g = build_radial_grid(10.0, 2000, 3);
  const TridiagonalOperator op = assemble(make_harmonic(1.0, 3), g);
  const auto evs = lowest_eigenvalues(op, 1);
  CHECK(std::abs(evs[0] - 3.0) < 1e-4);
}

TEST_CASE("radial harmonic d=2") {
  const Grid g = build_radial_grid(10.0, 2000, 2);
  const TridiagonalOperator op = assemble(make_harmonic(1.0, 2), g);
  const auto evs = lowest_eigenvalues(op, 1);
  CHECK(std::abs(evs[0] - 2.0) < 1e-4);
}

TEST_CASE("first four harmonic eigenvalues") {
  const Grid g = build_line_grid(-6.0, 6.0, 2001);
  const TridiagonalOperator op = assemble(make_harmonic(1.0), g);
  const auto evs = lowest_eigenvalues(op, 4);
  const double expected[] = {1.0, 3.0, 5.0, 7.0};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(evs[i] - expected[i]) < 1e-4);
  CHECK(evs[0] == *std::min_element(evs.begin(), evs.end()));
  for (int i = 1; i < 4; ++i) CHECK(evs[i] > evs[i - 1]);
}

TEST_CASE("quartic and friends against the fine-grid references") {
  const Grid g = build_line_grid(-5.0, 5.0, 4001);
  CHECK(std::abs(lowest_eigenvalues(assemble(make_quartic(1.0), g), 1)[0] -
                 kQuarticE0) < 1e-5);
  CHECK(std::abs(lowest_eigenvalues(assemble(make_anharmonic(1.0, 1.0), g), 1)[0] -
                 kAnharmonicE0) < 1e-5);
  CHECK(std::abs(lowest_eigenvalues(assemble(make_double_well(1.0, 2.0), g), 1)[0] -
                 kDoubleWellE0) < 1e-5);
  const Grid wide = build_line_grid(-8.0, 8.0, 8001);
  CHECK(std::abs(lowest_eigenvalues(assemble(make_abs_power(1.0), wide), 1)[0] -
                 kAbsE0) < 1e-5);
}

TEST_CASE("sturm count consistency") {
  const Grid g = build_line_grid(-8.0, 8.0, 1501);
  const TridiagonalOperator op = assemble(make_harmonic(1.0), g);
  const auto evs = lowest_eigenvalues(op, 6);
  for (const double mu : {0.5, 2.0, 4.0, 6.5, 8.0}) {
    int below = 0;
    for (double e : evs)
      if (e < mu) ++below;
    CHECK(sturm_count_below(op, mu) == below);
  }
}

TEST_CASE("eigenvalue monotonicity under pointwise potential increase") {
  const Grid g = build_line_grid(-6.0, 6.0, 1001);
  const double base = lowest_eigenvalues(assemble(make_quartic(1.0), g), 1)[0];
  const double lifted = lowest_eigenvalues(
      assemble(translate_and_shift(make_quartic(1.0), 0.0, 0.1), g), 1)[0];
  CHECK(lifted == doctest::Approx(base + 0.1).epsilon(1e-9));
}

TEST_CASE("grid refinement halves the error twice") {
  for (const Potential& v :
       {make_harmonic(1.0), make_quartic(1.0), make_anharmonic(1.0, 1.0)}) {
    const auto e_at = [&](int n) {
      const Grid g = build_line_grid(-8.0, 8.0, n);
      return lowest_eigenvalues(assemble(v, g), 1)[0];
    };
    const double e1 = e_at(1001), e2 = e_at(2001), e4 = e_at(4001);
    const double ratio = (e1 - e2) / (e2 - e4);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.15));
  }
}

TEST_CASE("ground state of the harmonic well") {
  const Grid g = build_line_grid(-10.0, 10.0, 2001);
  const SpectralResult res = solve_spectrum(make_harmonic(1.0), g, 1);

  CHECK(std::abs(weighted_norm_sq(res.ground_state, g) - 1.0) < 1e-10);
  CHECK(res.residual < 1e-7);

  double sup = 0.0;
  for (int i = 0; i < g.n_points; ++i) {
    const double x = g.points[i];
    const double exact =
        std::pow(std::numbers::pi, -0.25) * std::exp(-x * x / 2.0);
    sup = std::max(sup, std::abs(res.ground_state[i] - exact));
    CHECK(res.ground_state[i] >= 0.0);
  }
  CHECK(sup < 1e-4);

  // Rayleigh quotient of the computed eigenpair reproduces e0.
  const double rq = rayleigh_quotient(res.ground_state, make_harmonic(1.0), g);
  CHECK(std::abs(rq - res.eigenvalues[0]) < 1e-9);
}

TEST_CASE("variational principle") {
  const Grid g = build_line_grid(-10.0, 10.0, 2001);
  const Potential h = make_harmonic(1.0);
  const double e0 = lowest_eigenvalues(assemble(h, g), 1)[0];

  // The sampled Gaussian is the continuum minimizer: still an upper bound.
  std::vector<double> trial(g.n_points);
  for (int i = 0; i < g.n_points; ++i)
    trial[i] = std::pow(std::numbers::pi, -0.25) *
               std::exp(-g.points[i] * g.points[i] / 2.0);
  const double norm = std::sqrt(weighted_norm_sq(trial, g));
  for (double& x : trial) x /= norm;
  CHECK(rayleigh_quotient(trial, h, g) >= e0 - 1e-8);

  SUBCASE("random trials stay above the ground energy") {
    SplitRng rng(5);
    for (int c = 0; c < 50; ++c) {
      std::vector<double> psi(g.n_points, 0.0);
      for (int k = 0; k < 3; ++k) {
        const double ctr = rng.uniform(-3.0, 3.0);
        const double width = rng.uniform(0.4, 2.0);
        const double amp = rng.uniform(0.2, 1.0);
        for (int i = 0; i < g.n_points; ++i) {
          const double u = (g.points[i] - ctr) / width;
          psi[i] += amp * std::exp(-u * u);
        }
      }
      const double nn = std::sqrt(weighted_norm_sq(psi, g));
      for (double& x : psi) x /= nn;
      CHECK(rayleigh_quotient(psi, h, g) >= e0 - 1e-9);
    }
  }
}

TEST_CASE("two-level rayleigh quotient of a perturbed ground state") {
  const Grid g = build_line_grid(-10.0, 10.0, 2001);
  const TridiagonalOperator op = assemble(make_harmonic(1.0), g);
  const auto evs = lowest_eigenvalues(op, 2);
  const SpectralResult gs = ground_state(op, evs[0]);
  const std::vector<double> second = eigenvector(op, evs[1]);

  std::vector<double> mixed(g.n_points);
  for (int i = 0; i < g.n_points; ++i)
    mixed[i] = gs.ground_state[i] + 0.1 * second[i];
  const double norm = std::sqrt(weighted_norm_sq(mixed, g));
  for (double& x : mixed) x /= norm;

  const double rq = rayleigh_quotient(mixed, make_harmonic(1.0), g);
  CHECK(rq == doctest::Approx((1.0 + 0.01 * 3.0) / 1.01).epsilon(1e-3));
}

TEST_CASE("input validation") {
  const Grid g = build_line_grid(-5.0, 5.0, 101);
  const TridiagonalOperator op = assemble(make_harmonic(1.0), g);
  CHECK_THROWS_AS(lowest_eigenvalues(op, 0), std::invalid_argument);
  CHECK_THROWS_AS(lowest_eigenvalues(op, 1000), std::invalid_argument);

  const Grid rad = build_radial_grid(5.0, 100, 3);
  CHECK_THROWS_AS(assemble(make_harmonic(1.0), rad), std::invalid_argument);
  CHECK_THROWS_AS(assemble(make_harmonic(1.0, 3), g), std::invalid_argument);

  std::vector<double> bad(g.n_points, 1.0);
  CHECK_THROWS_AS(rayleigh_quotient(bad, make_harmonic(1.0), g),
                  std::invalid_argument);
}
