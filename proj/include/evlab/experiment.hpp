#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "evlab/chain.hpp"
#include "evlab/functionals.hpp"
#include "evlab/verify.hpp"

namespace evlab {

/// Parsed experiment configuration (see README for the JSON schema).
struct ExperimentConfig {
  std::vector<SweepPotential> potentials;
  std::vector<double> t_values;
  NumericsConfig numerics;
  std::string csv_path;
  std::string json_path;
  std::uint64_t seed = 42;
  bool flip_deficit_sign = false;  // test-only hook, config key "test_hooks"
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

/// One full evaluation; the config must hold exactly one potential and one t.
DeficitReport run_eval(const ExperimentConfig& config);

struct SweepRow {
  DeficitReport report;
  std::string error;  // empty on success
};

/// All (potential, t) cells in config order; rows are computed concurrently
/// and written in order. Partial failures become rows with an error field.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config);

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

VerifySummary run_verify(const ExperimentConfig& config);

std::vector<ChainReport> run_chain(const ExperimentConfig& config);

std::string report_to_json(const DeficitReport& report);
std::string summary_to_json(const VerifySummary& summary);
std::string chain_to_json(const std::vector<ChainReport>& reports);

}  // namespace evlab
