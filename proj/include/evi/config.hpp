#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "evi/evolution.hpp"

namespace evi {

// Spatial profile used by forcing and initial-data presets. Non-constant
// kinds accept an additive offset.
//   constant   value
//   sine_bump  offset + amplitude * prod_d sin(pi x_d / L_d)
//   gauss      offset + amplitude * exp(-|x - center|^2 / (2 width^2))
//   ramp       offset + amplitude * x / L_x
struct ProfileConfig {
  std::string kind = "constant";
  double value = 0.0;
  double amplitude = 0.0;
  double offset = 0.0;
  std::array<double, 2> center{0.0, 0.0};
  double width = 0.25;

  double eval(const Coord& p, const MeshSpec& mesh) const;
};

// Forcing presets:
//   stationary    f = profile
//   linear_drift  f = base + t * slope
//   exp_relax     f = limit + bump * exp(-rate t), bump >= 0   (declares f_inf)
//   sinusoidal    f = offset + amplitude * sin(omega t)
//   lowreg        f = -|x - t|^(1-alpha), alpha in (1/2, 1)    (ingestion only)
//   tabulated     piecewise linear in t through given nodal rows
struct ForcingConfig {
  std::string preset = "stationary";
  ProfileConfig profile;    // stationary
  ProfileConfig base;       // linear_drift
  ProfileConfig slope;      // linear_drift
  ProfileConfig limit;      // exp_relax
  ProfileConfig bump;       // exp_relax
  double rate = 1.0;        // exp_relax
  ProfileConfig offset;     // sinusoidal
  ProfileConfig amplitude;  // sinusoidal
  double omega = 1.0;       // sinusoidal
  double alpha = 0.75;      // lowreg
  std::vector<double> times;
  std::vector<Vec> values;
};

// horizon_hint: largest time the sampler will be evaluated at; the declared
// lower envelope of time-unbounded presets depends on it.
ForcingSampler make_sampler(const ForcingConfig& fc, const DiscreteOperators& ops,
                            double horizon_hint);

struct InitialConfig {
  std::string preset = "zero";  // zero | profile | equilibrium | values
  ProfileConfig profile;
  Vec values;
};

// equilibrium: z0 solves the static obstacle problem with psi = 0,
// g = f(.,0); its dual feasibility is exactly the admissibility condition.
Vec make_initial(const InitialConfig& ic, const DiscreteOperators& ops,
                 const ForcingSampler& f, const SolverConfig& solver);

struct StudyParams {
  std::vector<double> epsilons{1.0, 0.25, 0.0625, 0.015625};
  std::vector<double> horizons{2.0, 4.0, 8.0, 16.0};
  int instances = 200;
  int max_dofs = 12;
  int trials = 100;
  std::vector<int> tau_ladder{16, 32, 64, 128};
  double longtime_tol = 1e-6;
  double compare_forcing_shift = 0.5;
  double compare_initial_shift = 0.1;
};

struct ScenarioConfig {
  MeshSpec mesh;
  double sigma = 0.0;
  TimeGrid grid;
  ForcingConfig forcing;
  InitialConfig initial;
  SolverConfig solver;
  StudyParams study;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
};

struct ParseResult {
  std::optional<ScenarioConfig> config;
  std::vector<std::string> errors;  // all of them, not just the first
  bool ok() const { return config.has_value() && errors.empty(); }
};

ParseResult parse_config_json(const nlohmann::json& j, bool strict);
ParseResult parse_config_file(const std::filesystem::path& path, bool strict);

// Canonical emission; re-parsing it reproduces the config structurally.
nlohmann::json to_json(const ScenarioConfig& cfg);

}  // namespace evi
