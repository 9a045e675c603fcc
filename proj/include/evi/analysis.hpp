#pragma once

#include <cstdint>

#include "evi/evolution.hpp"

namespace evi {

// E(w, f) = 1/2 w'Aw + sigma/2 w'Mw - (Mf).w with f the nodal forcing paired
// with w (instantaneous sample or step average, caller's choice).
double energy(const DiscreteOperators& ops, const Vec& w, const Vec& f_nodal);

struct EnergyBalanceReport {
  std::vector<double> energies;      // E(z_k, f(t_k)) at snapshot times
  double max_window_residual = 0.0;  // max over windows [t_j, t_k] of |R|
  bool dt_approx = false;
};

// Balance residual R = E(z_k,t_k) - E(z_j,t_j) + int (M dtf).z dt (trapezoid
// over snapshots); exact only in the tau -> 0 limit, so callers assert decay
// across a tau ladder rather than smallness.
EnergyBalanceReport energy_balance_check(const Trajectory& traj, const ForcingSampler& f,
                                         const DiscreteOperators& ops);

struct UnilateralReport {
  int trials = 0;
  int violations = 0;
  double worst_margin = 0.0;      // most negative asserted margin seen
  int worst_step = -1;
  std::uint64_t seed = 0;
  double worst_sampled_margin = 0.0;  // same probe against f(t_k); reported only
};

// Draws `trials` random fields phi >= 0 per snapshot and scales
// delta in {1e-3,1e-2,1e-1,1}; asserts, with the step-paired forcing,
//   E(z_k - delta phi) >= E(z_k)   and the first-order chain
//   E(v) - E(z_k) >= (K z_k + c M (z_k - z_{k-1}) - M f_k).(v - z_k) >= 0.
UnilateralReport unilateral_minimality_probe(const Trajectory& traj, const ForcingSampler& f,
                                             const DiscreteOperators& ops, int trials,
                                             std::uint64_t seed, double rel_tol = 1e-10,
                                             bool skip_initial = false);

struct ComparisonStudyReport {
  bool hypothesis_ok = false;
  bool pass = false;
  double min_gap = 0.0;  // min over steps, nodes of z2_k - z1_k
};

// Orders are checked on z0 and on every averaged forcing before any step is
// run; a violated hypothesis rejects the study.
ComparisonStudyReport comparison_study(const DiscreteOperators& ops, const Vec& z0_1,
                                       const ForcingSampler& f1, const Vec& z0_2,
                                       const ForcingSampler& f2, const TimeGrid& grid,
                                       const SolverConfig& solver, double tol = 1e-10);

struct DependenceReport {
  double deviation = 0.0;      // sup_k || z1_k - z2_k ||_V
  double data_distance = 0.0;  // ||z0 diff||_V + sup_k ||f diff(t_k)||_* + ||dtf diff||_{L1 V*}
  double ratio = 0.0;
  bool uniqueness_violation = false;  // data_distance ~ 0 but deviation > tol
};

DependenceReport dependence_study(const DiscreteOperators& ops, const Vec& z0_1,
                                  const ForcingSampler& f1, const Vec& z0_2,
                                  const ForcingSampler& f2, const TimeGrid& grid,
                                  const SolverConfig& solver);

struct EquilibriumSolution {
  Vec z_inf;
  Vec multiplier;
  int iterations = 0;
  double comp_residual = 0.0;
  double complementarity = 0.0;  // max |min(z0 - z_inf, f_inf - q(z_inf))|
};

// Stationary obstacle problem with psi = z0, g = f_inf.
EquilibriumSolution solve_equilibrium(const DiscreteOperators& ops, const Vec& z0,
                                      const Vec& f_inf, const SolverConfig& solver);

struct LongtimeReport {
  std::vector<double> horizons;
  std::vector<double> distances;  // d(T) = || z(T) - z_inf ||_V
  bool monotone = false;
  double final_distance = 0.0;
  Vec z_inf;
  Vec z_final;
};

// Runs one trajectory to the largest horizon with fixed tau (m grows with T)
// and measures the V-distance to the equilibrium at each horizon.
LongtimeReport longtime_study(const DiscreteOperators& ops, const Vec& z0,
                              const ForcingSampler& f, const std::vector<double>& horizons,
                              double tau, const SolverConfig& solver);

}  // namespace evi
