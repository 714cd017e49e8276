#include "evlab/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "evlab/errors.hpp"

namespace evlab {

namespace {

using nlohmann::json;

double require_number(const json& j, const char* key, double fallback,
                      bool required = false) {
  if (!j.contains(key)) {
    if (required) throw ConfigError(std::string("config: missing key ") + key);
    return fallback;
  }
  if (!j.at(key).is_number())
    throw ConfigError(std::string("config: ") + key + " must be a number");
  return j.at(key).get<double>();
}

SweepPotential parse_potential(const json& j) {
  if (!j.is_object() || !j.contains("family"))
    throw ConfigError("config: potential entries need a \"family\"");
  const std::string family = j.at("family").get<std::string>();
  const json params = j.value("params", json::object());
  const int dim = static_cast<int>(require_number(j, "dimension", 1.0));

  try {
    if (family == "Harmonic")
      return {make_harmonic(require_number(params, "omega", 1.0), dim), false};
    if (family == "ScaledHarmonic") {
      const double center = require_number(params, "center", 0.0);
      const double offset = require_number(params, "offset", 0.0);
      if (!params.contains("t_match") || params.at("t_match").is_null() ||
          (params.at("t_match").is_string() &&
           params.at("t_match").get<std::string>() == "match"))
        return {make_scaled_harmonic(1.0, center, offset, dim), true};
      return {make_scaled_harmonic(require_number(params, "t_match", 1.0),
                                   center, offset, dim),
              false};
    }
    if (family == "Quartic")
      return {make_quartic(require_number(params, "a", 1.0)), false};
    if (family == "AnharmonicMix")
      return {make_anharmonic(require_number(params, "alpha", 1.0),
                              require_number(params, "beta", 1.0)),
              false};
    if (family == "DoubleWell")
      return {make_double_well(require_number(params, "a", 1.0),
                               require_number(params, "b", 1.0)),
              false};
    if (family == "AbsPower")
      return {make_abs_power(require_number(params, "p", 1.0), dim), false};
    if (family == "Separable") {
      if (!params.contains("factors") || !params.at("factors").is_array())
        throw ConfigError("config: Separable needs params.factors");
      std::vector<Potential> factors;
      for (const auto& f : params.at("factors")) {
        SweepPotential sp = parse_potential(f);
        if (sp.match_t)
          throw ConfigError("config: matching ScaledHarmonic not allowed inside Separable");
        factors.push_back(sp.base);
      }
      return {make_separable(std::move(factors)), false};
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  throw ConfigError("config: unknown family \"" + family + "\"");
}

NumericsConfig parse_numerics(const json& j) {
  NumericsConfig n;
  if (j.is_null()) return n;
  if (j.contains("n_points")) {
    const auto& np = j.at("n_points");
    if (np.is_string()) {
      if (np.get<std::string>() != "auto")
        throw ConfigError("config: n_points must be an integer or \"auto\"");
      n.n_points = NumericsConfig::kAutoPoints;
    } else if (np.is_number_integer()) {
      n.n_points = np.get<int>();
      if (n.n_points < 64)
        throw ConfigError("config: n_points must be >= 64");
    } else {
      throw ConfigError("config: n_points must be an integer or \"auto\"");
    }
  }
  if (j.contains("epsilon")) {
    n.epsilon = j.at("epsilon").get<double>();
    if (!(n.epsilon > 0 && n.epsilon < 1))
      throw ConfigError("config: epsilon must lie in (0, 1)");
  }
  if (j.contains("radius")) {
    const auto& r = j.at("radius");
    if (r.is_string()) {
      if (r.get<std::string>() != "auto")
        throw ConfigError("config: radius must be a number or \"auto\"");
      n.radius = 0.0;
    } else {
      n.radius = r.get<double>();
      if (!(n.radius > 0)) throw ConfigError("config: radius must be > 0");
    }
  }
  if (j.contains("refine")) n.refine = j.at("refine").get<bool>();
  return n;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");

  ExperimentConfig cfg;
  if (j.contains("potentials")) {
    if (!j.at("potentials").is_array())
      throw ConfigError("config: potentials must be an array");
    for (const auto& p : j.at("potentials"))
      cfg.potentials.push_back(parse_potential(p));
  }
  if (j.contains("t_values")) {
    if (!j.at("t_values").is_array())
      throw ConfigError("config: t_values must be an array");
    for (const auto& t : j.at("t_values")) {
      if (!t.is_number() || !(t.get<double>() > 0))
        throw ConfigError("config: t_values must be positive numbers");
      cfg.t_values.push_back(t.get<double>());
    }
  }
  cfg.numerics = parse_numerics(j.value("numerics", json()));
  if (j.contains("outputs")) {
    cfg.csv_path = j.at("outputs").value("csv_path", "");
    cfg.json_path = j.at("outputs").value("json_path", "");
  }
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("test_hooks"))
    cfg.flip_deficit_sign =
        j.at("test_hooks").value("flip_deficit_sign", false);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

DeficitReport run_eval(const ExperimentConfig& config) {
  if (config.potentials.size() != 1 || config.t_values.size() != 1)
    throw ConfigError("eval: config must hold exactly one potential and one t");
  const double t = config.t_values[0];
  return evaluate_full(config.potentials[0].at(t), t, config.numerics);
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
  if (config.potentials.empty() || config.t_values.empty())
    throw ConfigError("sweep: config needs potentials and t_values");

  struct Cell {
    Potential v;
    double t;
  };
  std::vector<Cell> cells;
  for (const auto& entry : config.potentials)
    for (const double t : config.t_values) cells.push_back({entry.at(t), t});

  std::vector<SweepRow> rows(cells.size());
  const auto work = [&](std::size_t i) {
    SweepRow row;
    try {
      row.report = evaluate_full(cells[i].v, cells[i].t, config.numerics);
    } catch (const std::exception& e) {
      row.report.family = cells[i].v.family_name();
      row.report.params = cells[i].v.params_string();
      row.report.dimension = cells[i].v.dimension();
      row.report.t = cells[i].t;
      row.error = e.what();
    }
    rows[i] = std::move(row);
  };

  // Cells are pure and independent; compute in parallel, emit in order.
  const unsigned workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
  std::vector<std::future<void>> pending;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (pending.size() >= workers) {
      pending.front().get();
      pending.erase(pending.begin());
    }
    pending.push_back(std::async(std::launch::async, work, i));
  }
  for (auto& f : pending) f.get();
  return rows;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "family,params,d,t,e0,ln_z,deficit,S,b_opt,ratio,gt_lhs,gt_rhs,"
         "n_points,radius,err_estimate,error\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const SweepRow& row : rows) {
    const DeficitReport& r = row.report;
    out << r.family << ',' << r.params << ',' << r.dimension << ','
        << fmt(r.t) << ',';
    if (row.error.empty()) {
      out << fmt(r.e0) << ',' << fmt(r.ln_z) << ',' << fmt(r.deficit) << ','
          << fmt(r.stability.available ? r.stability.distance : nan) << ','
          << fmt(r.stability.available ? r.stability.b_opt : nan) << ','
          << fmt(r.ratio) << ',' << fmt(r.gt.lhs_truncated) << ','
          << fmt(r.gt.rhs) << ',' << r.numerics.n_points << ','
          << fmt(r.numerics.radius) << ',' << fmt(r.numerics.err_estimate)
          << ',';
    } else {
      for (int i = 0; i < 11; ++i) out << ',';
    }
    out << row.error << '\n';
  }
}

VerifySummary run_verify(const ExperimentConfig& config) {
  VerifyOptions opt;
  opt.seed = config.seed;
  opt.potentials = config.potentials;
  opt.t_values = config.t_values;
  opt.numerics = config.numerics;
  opt.flip_deficit_sign = config.flip_deficit_sign;
  return run_verification(opt);
}

std::vector<ChainReport> run_chain(const ExperimentConfig& config) {
  if (config.potentials.empty() || config.t_values.empty())
    throw ConfigError("chain: config needs potentials and t_values");
  std::vector<ChainReport> out;
  for (const auto& entry : config.potentials)
    for (const double t : config.t_values) {
      const Potential v = entry.at(t);
      if (v.dimension() != 1) continue;  // chain reports are 1D
      out.push_back(proof_chain_report(v, t, config.numerics));
    }
  return out;
}

namespace {

json numerics_to_json(const NumericsReport& n) {
  return json{{"n_points", n.n_points},
              {"radius", n.radius},
              {"residual", n.residual},
              {"err_estimate", n.err_estimate}};
}

}  // namespace

std::string report_to_json(const DeficitReport& r) {
  json j{{"family", r.family},      {"params", r.params},
         {"dimension", r.dimension}, {"t", r.t},
         {"e0", r.e0},              {"ln_z", r.ln_z},
         {"deficit", r.deficit},    {"numerics", numerics_to_json(r.numerics)}};
  if (r.stability.available) {
    j["stability"] = {{"distance", r.stability.distance},
                      {"b_opt", r.stability.b_opt}};
    j["ratio"] = std::isnan(r.ratio) ? json() : json(r.ratio);
  } else {
    j["stability"] = json();
    j["ratio"] = json();
  }
  if (r.gt_available) {
    j["golden_thompson"] = {{"lhs_truncated", r.gt.lhs_truncated},
                            {"rhs", r.gt.rhs},
                            {"sharp_vs_gt_margin", r.gt.sharp_vs_gt_margin},
                            {"n_terms", r.gt.n_terms},
                            {"warning", r.gt.warning}};
  }
  return j.dump(2);
}

std::string summary_to_json(const VerifySummary& s) {
  json suites = json::array();
  for (const SuiteResult& suite : s.suites) {
    suites.push_back({{"name", suite.name},
                      {"cases", suite.cases},
                      {"failures", suite.failures},
                      {"worst_margin", suite.worst_margin},
                      {"note", suite.note}});
  }
  return json{{"seed", s.seed},
              {"pass", s.all_passed()},
              {"suites", suites}}
      .dump(2);
}

std::string chain_to_json(const std::vector<ChainReport>& reports) {
  json arr = json::array();
  for (const ChainReport& r : reports) {
    arr.push_back({{"family", r.family},
                   {"params", r.params},
                   {"t", r.t},
                   {"lambda", r.lambda},
                   {"e0", r.e0},
                   {"ln_z", r.ln_z},
                   {"deficit", r.deficit},
                   {"t_deficit", r.t_deficit},
                   {"lsi_stab_term", r.lsi_stab_term},
                   {"lsi_stab_scaled", r.lsi_stab_scaled},
                   {"b_opt", r.b_opt},
                   {"gibbs_l1", r.gibbs_l1},
                   {"gibbs_term", r.gibbs_term},
                   {"gauss_l1", r.gauss_l1},
                   {"schwarz_lower", r.schwarz_lower},
                   {"schwarz_slack_min", r.schwarz_slack_min},
                   {"triangle_slack", r.triangle_slack},
                   {"s_triangle_bound_sq", r.s_triangle_bound_sq},
                   {"logsob_deficit", r.lsd},
                   {"gibbs_gap", r.gibbs_gap},
                   {"identity_residual", r.identity_residual},
                   {"chain_slack", r.chain_slack},
                   {"chain_ok", r.chain_ok},
                   {"numerics", numerics_to_json(r.numerics)}});
  }
  return arr.dump(2);
}

}  // namespace evlab
