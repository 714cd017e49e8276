#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "evlab/chain.hpp"
#include "evlab/eigensolve.hpp"
#include "evlab/experiment.hpp"
#include "evlab/functionals.hpp"
#include "evlab/grid.hpp"
#include "evlab/oracle.hpp"
#include "evlab/potential.hpp"
#include "evlab/quadrature.hpp"

#include <sstream>

namespace py = pybind11;
using namespace evlab;

namespace {

NumericsConfig numerics_from_kwargs(int n_points, double epsilon, double radius,
                                    bool refine) {
  NumericsConfig n;
  n.n_points = n_points;
  n.epsilon = epsilon;
  n.radius = radius;
  n.refine = refine;
  return n;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sharp lowest-eigenvalue bounds for Schrodinger operators with "
            "confining potentials: deficits, stability distances, and the "
            "supporting functional inequalities.";

  py::class_<Potential>(m, "Potential")
      .def_property_readonly("dimension", &Potential::dimension)
      .def_property_readonly("family", &Potential::family_name)
      .def_property_readonly("params", &Potential::params_string)
      .def("__call__", [](const Potential& v, double x) { return v(x); })
      .def("eval",
           [](const Potential& v, const std::vector<double>& pts) {
             return v.eval(pts);
           })
      .def("min_value", &Potential::min_value)
      .def("center", &Potential::center)
      .def("__repr__", [](const Potential& v) {
        return "<Potential " + v.family_name() + " " + v.params_string() + ">";
      });

  m.def("harmonic", &make_harmonic, py::arg("omega") = 1.0,
        py::arg("dimension") = 1);
  m.def("scaled_harmonic", &make_scaled_harmonic, py::arg("t_match"),
        py::arg("center") = 0.0, py::arg("offset") = 0.0,
        py::arg("dimension") = 1);
  m.def("quartic", &make_quartic, py::arg("a") = 1.0);
  m.def("anharmonic", &make_anharmonic, py::arg("alpha"), py::arg("beta"));
  m.def("double_well", &make_double_well, py::arg("a"), py::arg("b"));
  m.def("abs_power", &make_abs_power, py::arg("p"), py::arg("dimension") = 1);
  m.def("separable", &make_separable, py::arg("factors"));
  m.def("translate_and_shift", &translate_and_shift, py::arg("potential"),
        py::arg("a"), py::arg("kappa"));
  m.def("rescale", &rescale, py::arg("potential"), py::arg("s"));

  py::class_<Grid>(m, "Grid")
      .def_readonly("dimension", &Grid::dimension)
      .def_readonly("left", &Grid::left)
      .def_readonly("right", &Grid::right)
      .def_readonly("n_points", &Grid::n_points)
      .def_readonly("spacing", &Grid::spacing)
      .def_readonly("points", &Grid::points)
      .def_readonly("weights", &Grid::weights)
      .def_property_readonly("kind", [](const Grid& g) {
        return g.kind == Grid::Kind::Line ? "line" : "radial";
      });

  m.def("line_grid", &build_line_grid, py::arg("left"), py::arg("right"),
        py::arg("n"));
  m.def("radial_grid", &build_radial_grid, py::arg("rmax"), py::arg("n"),
        py::arg("dimension"));
  m.def("truncation_radius", &truncation_radius, py::arg("potential"),
        py::arg("t"), py::arg("epsilon") = 1e-12);

  py::class_<SpectralResult>(m, "SpectralResult")
      .def_readonly("eigenvalues", &SpectralResult::eigenvalues)
      .def_readonly("ground_state", &SpectralResult::ground_state)
      .def_readonly("residual", &SpectralResult::residual);

  m.def(
      "solve_spectrum",
      [](const Potential& v, const Grid& g, int k) {
        return solve_spectrum(v, g, k);
      },
      py::arg("potential"), py::arg("grid"), py::arg("k") = 1);
  m.def("rayleigh_quotient",
        [](const std::vector<double>& psi, const Potential& v, const Grid& g) {
          return rayleigh_quotient(psi, v, g);
        });

  m.def("integrate", [](const std::vector<double>& f, const Grid& g) {
    return integrate(f, g);
  });
  m.def("log_partition", &log_partition, py::arg("potential"), py::arg("t"),
        py::arg("grid"));
  m.def("dirichlet_energy", [](const std::vector<double>& f, const Grid& g) {
    return dirichlet_energy(f, g);
  });
  m.def("entropy_term", [](const std::vector<double>& f, const Grid& g) {
    return entropy_term(f, g);
  });

  py::class_<DensityOnGrid>(m, "DensityOnGrid")
      .def(py::init(&DensityOnGrid::normalized), py::arg("values"),
           py::arg("grid"))
      .def_readonly("values", &DensityOnGrid::values);
  m.def("gibbs_density", &gibbs_density, py::arg("potential"), py::arg("t"),
        py::arg("grid"));
  m.def("l1_distance", &l1_distance);
  m.def("relative_entropy", &relative_entropy);
  m.def("ckp_gap", &ckp_gap);
  m.def("sqrt_l1_gap", &sqrt_l1_gap);
  m.def("gibbs_functional", &gibbs_functional, py::arg("rho"),
        py::arg("potential"), py::arg("T"));

  py::class_<StabilityResult>(m, "StabilityResult")
      .def_readonly("available", &StabilityResult::available)
      .def_readonly("distance", &StabilityResult::distance)
      .def_readonly("b_opt", &StabilityResult::b_opt);

  py::class_<GoldenThompsonResult>(m, "GoldenThompsonResult")
      .def_readonly("lhs_truncated", &GoldenThompsonResult::lhs_truncated)
      .def_readonly("rhs", &GoldenThompsonResult::rhs)
      .def_readonly("sharp_vs_gt_margin",
                    &GoldenThompsonResult::sharp_vs_gt_margin)
      .def_readonly("n_terms", &GoldenThompsonResult::n_terms)
      .def_readonly("warning", &GoldenThompsonResult::warning);

  py::class_<NumericsReport>(m, "NumericsReport")
      .def_readonly("n_points", &NumericsReport::n_points)
      .def_readonly("radius", &NumericsReport::radius)
      .def_readonly("residual", &NumericsReport::residual)
      .def_readonly("err_estimate", &NumericsReport::err_estimate);

  py::class_<DeficitReport>(m, "DeficitReport")
      .def_readonly("family", &DeficitReport::family)
      .def_readonly("params", &DeficitReport::params)
      .def_readonly("dimension", &DeficitReport::dimension)
      .def_readonly("t", &DeficitReport::t)
      .def_readonly("e0", &DeficitReport::e0)
      .def_readonly("ln_z", &DeficitReport::ln_z)
      .def_readonly("deficit", &DeficitReport::deficit)
      .def_readonly("stability", &DeficitReport::stability)
      .def_readonly("ratio", &DeficitReport::ratio)
      .def_readonly("golden_thompson", &DeficitReport::gt)
      .def_readonly("numerics", &DeficitReport::numerics)
      .def("__repr__", [](const DeficitReport& r) {
        std::ostringstream os;
        os << "<DeficitReport " << r.family << " t=" << r.t
           << " deficit=" << r.deficit << ">";
        return os.str();
      });

  const auto wrap_numerics = [](int n_points, double epsilon, double radius,
                                bool refine) {
    return numerics_from_kwargs(n_points, epsilon, radius, refine);
  };

  m.def(
      "keller_deficit",
      [wrap_numerics](const Potential& v, double t, int n_points,
                      double epsilon, double radius, bool refine) {
        return keller_deficit(v, t,
                              wrap_numerics(n_points, epsilon, radius, refine));
      },
      py::arg("potential"), py::arg("t"), py::arg("n_points") = 0,
      py::arg("epsilon") = 1e-12, py::arg("radius") = 0.0,
      py::arg("refine") = false);
  m.def(
      "evaluate_full",
      [wrap_numerics](const Potential& v, double t, int n_points,
                      double epsilon, double radius, bool refine) {
        return evaluate_full(v, t,
                             wrap_numerics(n_points, epsilon, radius, refine));
      },
      py::arg("potential"), py::arg("t"), py::arg("n_points") = 0,
      py::arg("epsilon") = 1e-12, py::arg("radius") = 0.0,
      py::arg("refine") = false);
  m.def(
      "stability_distance",
      [wrap_numerics](const Potential& v, double t, int n_points,
                      double epsilon, double radius) {
        return stability_distance(v, t,
                                  wrap_numerics(n_points, epsilon, radius, false));
      },
      py::arg("potential"), py::arg("t"), py::arg("n_points") = 0,
      py::arg("epsilon") = 1e-12, py::arg("radius") = 0.0);
  m.def("stability_ratio", &stability_ratio);
  m.def(
      "golden_thompson_check",
      [wrap_numerics](const Potential& v, double t, int n_points,
                      double epsilon, double radius) {
        return golden_thompson_check(
            v, t, wrap_numerics(n_points, epsilon, radius, false));
      },
      py::arg("potential"), py::arg("t"), py::arg("n_points") = 0,
      py::arg("epsilon") = 1e-12, py::arg("radius") = 0.0);

  m.def("logsob_deficit",
        [](const std::vector<double>& psi, const Grid& g, double lambda) {
          return logsob_deficit(psi, g, lambda);
        });
  m.def("logsob_stability_term",
        [](const std::vector<double>& psi, const Grid& g, double lambda) {
          const LogSobStabilityTerm st = logsob_stability_term(psi, g, lambda);
          return py::make_tuple(st.value, st.b_opt);
        });

  py::class_<ChainReport>(m, "ChainReport")
      .def_readonly("t", &ChainReport::t)
      .def_readonly("lambda_", &ChainReport::lambda)
      .def_readonly("e0", &ChainReport::e0)
      .def_readonly("deficit", &ChainReport::deficit)
      .def_readonly("t_deficit", &ChainReport::t_deficit)
      .def_readonly("lsi_stab_term", &ChainReport::lsi_stab_term)
      .def_readonly("lsi_stab_scaled", &ChainReport::lsi_stab_scaled)
      .def_readonly("b_opt", &ChainReport::b_opt)
      .def_readonly("gibbs_l1", &ChainReport::gibbs_l1)
      .def_readonly("gibbs_term", &ChainReport::gibbs_term)
      .def_readonly("gauss_l1", &ChainReport::gauss_l1)
      .def_readonly("schwarz_lower", &ChainReport::schwarz_lower)
      .def_readonly("schwarz_slack_min", &ChainReport::schwarz_slack_min)
      .def_readonly("triangle_slack", &ChainReport::triangle_slack)
      .def_readonly("logsob_deficit", &ChainReport::lsd)
      .def_readonly("gibbs_gap", &ChainReport::gibbs_gap)
      .def_readonly("identity_residual", &ChainReport::identity_residual)
      .def_readonly("chain_slack", &ChainReport::chain_slack)
      .def_readonly("chain_ok", &ChainReport::chain_ok);

  m.def(
      "proof_chain_report",
      [wrap_numerics](const Potential& v, double t, int n_points,
                      double epsilon, double radius) {
        return proof_chain_report(
            v, t, wrap_numerics(n_points, epsilon, radius, false));
      },
      py::arg("potential"), py::arg("t"), py::arg("n_points") = 0,
      py::arg("epsilon") = 1e-12, py::arg("radius") = 0.0);

  m.def("normal_cdf", &oracle::normal_cdf);
  m.def("gaussian_l1_shift", &oracle::gaussian_l1_shift, py::arg("b_norm"),
        py::arg("t"), py::arg("d") = 1);
  m.def("harmonic_reference",
        [](double t, int d, std::vector<double> center, double offset) {
          const auto ref = oracle::harmonic_reference(t, d, std::move(center), offset);
          py::dict out;
          out["e0_exact"] = ref.e0_exact;
          out["ln_z_exact"] = ref.ln_z_exact;
          out["gauss_variance"] = ref.gauss_variance;
          out["deficit"] = ref.deficit();
          return out;
        },
        py::arg("t"), py::arg("d") = 1,
        py::arg("center") = std::vector<double>{0.0}, py::arg("offset") = 0.0);

  m.def("sweep_csv", [](const std::string& config_json) {
    const ExperimentConfig cfg = parse_config(config_json);
    const auto rows = run_sweep(cfg);
    std::ostringstream os;
    write_sweep_csv(rows, os);
    return os.str();
  });
  m.def("verify_json", [](const std::string& config_json) {
    const ExperimentConfig cfg = parse_config(config_json);
    return summary_to_json(run_verify(cfg));
  });

  m.attr("__version__") = "0.1.0";
}
