#pragma once

#include "evi/analysis.hpp"

namespace evi {

// Implicit step of the epsilon-parabolic regularization: same obstacle
// structure with operator K + (epsilon/tau) M and right-hand side
// M f_k + (epsilon/tau) M z_{k-1}. epsilon = 0 degenerates exactly to the
// plain scheme. Admissibility of z0 is not required here.
Trajectory run_regularized(const DiscreteOperators& ops, const Vec& z0,
                           const ForcingSampler& f, const TimeGrid& grid, double epsilon,
                           const SolverConfig& solver, const RunOptions& opts = RunOptions{
                               .require_admissible = false});

struct SingularLimitReport {
  std::vector<double> epsilons;    // as given
  std::vector<double> deviations;  // D(eps) = max_k || z_eps,k - z_k ||_V
  double fitted_slope = 0.0;       // log D vs log eps least squares
  bool monotone = false;           // D nonincreasing as eps decreases
  bool all_zero = false;           // frozen dynamics; slope undefined
};

// Runs the eps = 0 reference plus each listed epsilon on the same grid and
// data, so only the sqrt(eps) term of the error bound is in play.
SingularLimitReport singular_limit_study(const DiscreteOperators& ops, const Vec& z0,
                                         const ForcingSampler& f, const TimeGrid& grid,
                                         const std::vector<double>& eps_list,
                                         const SolverConfig& solver);

}  // namespace evi
