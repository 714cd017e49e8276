#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evlab/grid.hpp"
#include "evlab/potential.hpp"

namespace evlab {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  double worst_margin = 0.0;  // most negative slack seen (finite cases)
  std::string note;

  bool passed() const { return failures == 0; }
};

struct VerifySummary {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;

  bool all_passed() const;
};

/// A sweep member: either a concrete potential or the scaled-harmonic family
/// rebound to each row's t (the equality case at every temperature).
struct SweepPotential {
  Potential base;
  bool match_t = false;

  Potential at(double t) const;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::vector<SweepPotential> potentials;  // sweep members; default catalog if empty
  std::vector<double> t_values;            // default {0.25, 0.5, 1, 2, 4} if empty
  NumericsConfig numerics;                 // numerics for the deficit sweep
  bool flip_deficit_sign = false;          // test-only corruption hook
};

/// Deterministic uniform generator used by all randomized suites.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

SuiteResult verify_ckp(std::uint64_t seed, int cases = 1000);
SuiteResult verify_relative_entropy(std::uint64_t seed, int cases = 1000);
SuiteResult verify_schwarz_step(std::uint64_t seed, int cases = 1000);
SuiteResult verify_gibbs_principle(std::uint64_t seed, int cases = 200);
SuiteResult verify_logsob(std::uint64_t seed, int random_trials = 200);
SuiteResult verify_deficit_nonnegativity(const VerifyOptions& opt);
SuiteResult verify_invariance(const VerifyOptions& opt);
SuiteResult verify_golden_thompson(const VerifyOptions& opt);
SuiteResult verify_elementary_inequality(std::uint64_t seed, int cases = 1000);

VerifySummary run_verification(const VerifyOptions& opt);

/// Default sweep catalog: x^2, x^4, x^2+x^4, x^4-2x^2, |x|, and the matching
/// scaled harmonic family.
std::vector<SweepPotential> default_catalog();
std::vector<double> default_t_values();

}  // namespace evlab
