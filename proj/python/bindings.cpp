#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "evi/dispatch.hpp"
#include "evi/io.hpp"
#include "evi/oracle.hpp"
#include "evi/regularized.hpp"

namespace py = pybind11;
using namespace evi;

namespace {

ForcingSampler sampler_from_callables(
    std::function<double(double, double, double)> eval,
    std::optional<std::function<double(double, double, double)>> dt, Vec envelope,
    Vec f_infinity, bool stationary) {
  ForcingSampler f;
  f.eval = [eval](Coord p, double t) { return eval(p.x, p.y, t); };
  if (dt) {
    auto d = *dt;
    f.dt = [d](Coord p, double t) { return d(p.x, p.y, t); };
  }
  f.envelope = std::move(envelope);
  f.f_infinity = std::move(f_infinity);
  f.stationary = stationary;
  return f;
}

}  // namespace

PYBIND11_MODULE(_evi, m) {
  m.doc() = "core solver for the irreversible evolution z' <= 0, -lap z + sigma z <= f "
            "with complementarity (minimizing-movement obstacle steps)";

  py::enum_<Face>(m, "Face")
      .value("left", Face::Left)
      .value("right", Face::Right)
      .value("bottom", Face::Bottom)
      .value("top", Face::Top);
  py::enum_<BoundaryKind>(m, "BoundaryKind")
      .value("dirichlet", BoundaryKind::Dirichlet)
      .value("neumann", BoundaryKind::Neumann);

  py::class_<MeshSpec>(m, "MeshSpec")
      .def(py::init<>())
      .def_readwrite("dim", &MeshSpec::dim)
      .def_readwrite("extent", &MeshSpec::extent)
      .def_readwrite("nodes", &MeshSpec::nodes)
      .def_readwrite("boundary", &MeshSpec::boundary)
      .def("validate", &MeshSpec::validate);

  py::class_<DiscreteOperators>(m, "DiscreteOperators")
      .def_property_readonly("n_free", &DiscreteOperators::n_free)
      .def_readonly("sigma", &DiscreteOperators::sigma)
      .def_readonly("mass", &DiscreteOperators::M)
      .def_property_readonly("coords",
                             [](const DiscreteOperators& ops) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& c : ops.coords) out.emplace_back(c.x, c.y);
                               return out;
                             })
      .def("stiffness_dense", [](const DiscreteOperators& ops) { return ops.A.dense(); })
      .def("k_dense", [](const DiscreteOperators& ops) { return ops.K.dense(); });

  m.def("build_mesh_and_operators", &build_mesh_and_operators, py::arg("spec"),
        py::arg("sigma"));
  m.def("validate_problem", [](const DiscreteOperators& ops) {
    const Validation v = validate_problem(ops);
    return py::make_tuple(v.pass, v.message);
  });

  py::enum_<SystemMatrix>(m, "SystemMatrix")
      .value("k_sigma", SystemMatrix::KSigma)
      .value("b", SystemMatrix::B);
  m.def("solve_spd", &solve_spd, py::arg("ops"), py::arg("which"), py::arg("rhs"),
        py::arg("rel_tol") = defaults::cg_rel_tol, py::arg("extra_mass") = 0.0);
  m.def("norm_l2", &norm_l2);
  m.def("norm_v", &norm_v);
  m.def("norm_vstar", &norm_vstar, py::arg("ops"), py::arg("load"),
        py::arg("rel_tol") = defaults::cg_rel_tol);
  m.def("load_from_density", &load_from_density);
  m.def("nodal_elliptic_residual", &nodal_elliptic_residual);
  m.def("pointwise_min", &pointwise_min);

  py::class_<ObstacleProblem>(m, "ObstacleProblem")
      .def(py::init([](const DiscreteOperators& ops, Vec psi, Vec g, double extra_mass) {
             return ObstacleProblem{&ops, std::move(psi), std::move(g), extra_mass};
           }),
           py::arg("ops"), py::arg("psi"), py::arg("g"), py::arg("extra_mass") = 0.0,
           py::keep_alive<1, 2>())
      .def_readwrite("psi", &ObstacleProblem::psi)
      .def_readwrite("g", &ObstacleProblem::g)
      .def_readwrite("extra_mass", &ObstacleProblem::extra_mass);

  py::enum_<ObstacleMethod>(m, "ObstacleMethod")
      .value("psor", ObstacleMethod::PSOR)
      .value("pdas", ObstacleMethod::PDAS);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("method", &SolverConfig::method)
      .def_readwrite("omega", &SolverConfig::omega)
      .def_readwrite("tol", &SolverConfig::tol)
      .def_readwrite("max_iter", &SolverConfig::max_iter)
      .def_readwrite("warm_start", &SolverConfig::warm_start);

  py::class_<ObstacleSolution>(m, "ObstacleSolution")
      .def_readonly("z", &ObstacleSolution::z)
      .def_readonly("multiplier", &ObstacleSolution::multiplier)
      .def_readonly("iterations", &ObstacleSolution::iterations)
      .def_readonly("comp_residual", &ObstacleSolution::comp_residual)
      .def_readonly("method", &ObstacleSolution::method)
      .def_readonly("warm_start_clipped", &ObstacleSolution::warm_start_clipped);

  m.def("solve", &solve, py::arg("prob"), py::arg("cfg") = SolverConfig{});
  m.def("solve_bruteforce", &solve_bruteforce);
  m.def("complementarity_residual", &complementarity_residual);
  m.def("lcp_residual", &lcp_residual);
  m.def("j_value", &j_value);
  m.def("check_lewy_stampacchia", [](const ObstacleProblem& p, const ObstacleSolution& s) {
    const LewyStampacchiaReport r = check_lewy_stampacchia(p, s);
    return py::make_tuple(r.pass, r.lower_margin, r.upper_margin);
  });

  py::class_<TimeGrid>(m, "TimeGrid")
      .def(py::init([](double T, int steps) { return TimeGrid{T, steps}; }), py::arg("T"),
           py::arg("steps"))
      .def_readonly("T", &TimeGrid::T)
      .def_readonly("m", &TimeGrid::m)
      .def("tau", &TimeGrid::tau)
      .def("t", &TimeGrid::t);

  py::class_<ForcingSampler>(m, "ForcingSampler")
      .def_readonly("envelope", &ForcingSampler::envelope)
      .def_readonly("f_infinity", &ForcingSampler::f_infinity)
      .def_readonly("stationary", &ForcingSampler::stationary);
  m.def("make_callable_sampler", &sampler_from_callables, py::arg("eval"),
        py::arg("dt") = std::nullopt, py::arg("envelope") = Vec{},
        py::arg("f_infinity") = Vec{}, py::arg("stationary") = false,
        "forcing from f(x, y, t) (and optional df/dt) python callables");

  py::class_<StepDiagnostics>(m, "StepDiagnostics")
      .def_readonly("iterations", &StepDiagnostics::iterations)
      .def_readonly("comp_residual", &StepDiagnostics::comp_residual)
      .def_readonly("ls_lower_margin", &StepDiagnostics::ls_lower_margin)
      .def_readonly("ls_upper_margin", &StepDiagnostics::ls_upper_margin)
      .def_readonly("irreversibility_gap", &StepDiagnostics::irreversibility_gap);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("grid", &Trajectory::grid)
      .def_readonly("epsilon", &Trajectory::epsilon)
      .def_readonly("snapshots", &Trajectory::snapshots)
      .def_readonly("forcing_avgs", &Trajectory::forcing_avgs)
      .def_readonly("multipliers", &Trajectory::multipliers)
      .def_readonly("steps", &Trajectory::steps);

  m.def("check_admissible_initial",
        [](const Vec& z0, const ForcingSampler& f, const DiscreteOperators& ops) {
          const AdmissibilityReport r = check_admissible_initial(z0, f, ops);
          return py::make_tuple(r.pass, r.worst, r.worst_node);
        });
  m.def(
      "run_minimizing_movement",
      [](const DiscreteOperators& ops, const Vec& z0, const ForcingSampler& f,
         const TimeGrid& grid, const SolverConfig& solver, bool require_admissible) {
        RunOptions opts;
        opts.require_admissible = require_admissible;
        return run_minimizing_movement(ops, z0, f, grid, solver, opts);
      },
      py::arg("ops"), py::arg("z0"), py::arg("forcing"), py::arg("grid"),
      py::arg("solver") = SolverConfig{}, py::arg("require_admissible") = true);
  py::enum_<InterpolantKind>(m, "InterpolantKind")
      .value("linear", InterpolantKind::Linear)
      .value("constant", InterpolantKind::Constant);
  m.def("eval_interpolant", &eval_interpolant);
  m.def("average_forcing", &average_forcing);
  m.def("sample_nodal", &sample_nodal);

  m.def("energy", &energy);
  m.def("run_regularized",
        [](const DiscreteOperators& ops, const Vec& z0, const ForcingSampler& f,
           const TimeGrid& grid, double epsilon, const SolverConfig& solver) {
          return run_regularized(ops, z0, f, grid, epsilon, solver);
        },
        py::arg("ops"), py::arg("z0"), py::arg("forcing"), py::arg("grid"), py::arg("epsilon"),
        py::arg("solver") = SolverConfig{});

  py::class_<EquilibriumSolution>(m, "EquilibriumSolution")
      .def_readonly("z_inf", &EquilibriumSolution::z_inf)
      .def_readonly("multiplier", &EquilibriumSolution::multiplier)
      .def_readonly("iterations", &EquilibriumSolution::iterations)
      .def_readonly("comp_residual", &EquilibriumSolution::comp_residual)
      .def_readonly("complementarity", &EquilibriumSolution::complementarity);
  m.def("solve_equilibrium", &solve_equilibrium, py::arg("ops"), py::arg("z0"),
        py::arg("f_inf"), py::arg("solver") = SolverConfig{});

  // Config + dispatch: the same surface the CLI drives.
  m.def("run_command",
        [](const std::string& command, const std::string& config_json,
           const std::string& out_dir, std::optional<std::uint64_t> seed, bool strict) {
          const auto cmd = command_from_string(command);
          if (!cmd) throw std::invalid_argument("unknown command '" + command + "'");
          ParseResult parsed = parse_config_json(nlohmann::json::parse(config_json), strict);
          if (!parsed.ok()) {
            std::string msg = "config rejected:";
            for (const auto& e : parsed.errors) msg += "\n  - " + e;
            throw std::invalid_argument(msg);
          }
          ScenarioConfig cfg = *parsed.config;
          if (seed) cfg.seed = *seed;
          return dispatch(*cmd, cfg, out_dir.empty() ? cfg.out_dir : out_dir);
        },
        py::arg("command"), py::arg("config_json"), py::arg("out_dir") = std::string{},
        py::arg("seed") = std::nullopt, py::arg("strict") = true);
  m.def("canonical_config", [](const std::string& config_json, bool strict) {
    ParseResult parsed = parse_config_json(nlohmann::json::parse(config_json), strict);
    if (!parsed.ok()) {
      std::string msg = "config rejected:";
      for (const auto& e : parsed.errors) msg += "\n  - " + e;
      throw std::invalid_argument(msg);
    }
    return to_json(*parsed.config).dump(2);
  },
        py::arg("config_json"), py::arg("strict") = true);
}
