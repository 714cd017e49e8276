// Experiment runner: single evaluations, family sweeps, the verification
// suites, and proof-chain reports. Exit codes: 0 success, 2 config error,
// 3 numerical failure, 4 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "evlab/errors.hpp"
#include "evlab/experiment.hpp"

namespace {

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw evlab::ConfigError("cannot write to " + path);
  out << text << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evlab: sharp eigenvalue bounds for confining potentials"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool refine = false;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config (JSON)")
        ->required();
    cmd->add_option("--out", out_path, "output path (default: config or stdout)");
    cmd->add_option("--seed", seed, "random seed override")
        ->each([&](const std::string&) { seed_set = true; });
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate one (potential, t)");
  add_common(eval);
  CLI::App* sweep = app.add_subcommand("sweep", "sweep potentials x t-grid to CSV");
  add_common(sweep);
  sweep->add_flag("--refine", refine,
                  "also run at doubled resolution and report the change");
  CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
  add_common(verify);
  CLI::App* chain = app.add_subcommand("chain", "proof-chain reports per (V, t)");
  add_common(chain);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    evlab::ExperimentConfig config = evlab::load_config(config_path);
    if (seed_set) config.seed = seed;
    if (refine) config.numerics.refine = true;

    if (eval->parsed()) {
      const evlab::DeficitReport report = evlab::run_eval(config);
      write_output(evlab::report_to_json(report),
                   out_path.empty() ? config.json_path : out_path);
      return 0;
    }
    if (sweep->parsed()) {
      const auto rows = evlab::run_sweep(config);
      std::ostringstream csv;
      evlab::write_sweep_csv(rows, csv);
      const std::string path =
          out_path.empty() ? config.csv_path : out_path;
      if (path.empty())
        std::cout << csv.str();
      else {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw evlab::ConfigError("cannot write to " + path);
        out << csv.str();
      }
      for (const auto& row : rows)
        if (!row.error.empty())
          std::cerr << "row failed: " << row.report.family << " t=" << row.report.t
                    << ": " << row.error << '\n';
      return 0;
    }
    if (verify->parsed()) {
      const evlab::VerifySummary summary = evlab::run_verify(config);
      write_output(evlab::summary_to_json(summary),
                   out_path.empty() ? config.json_path : out_path);
      if (!summary.all_passed()) {
        std::cerr << "verification failed\n";
        return 4;
      }
      return 0;
    }
    if (chain->parsed()) {
      const auto reports = evlab::run_chain(config);
      write_output(evlab::chain_to_json(reports),
                   out_path.empty() ? config.json_path : out_path);
      return 0;
    }
  } catch (const evlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const evlab::NumericalError& e) {
    std::cerr << "{\"error\": {\"kind\": \"numerical\", \"what\": \"" << e.what()
              << "\"}}\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": {\"kind\": \"numerical\", \"what\": \"" << e.what()
              << "\"}}\n";
    return 3;
  }
  return 0;
}
