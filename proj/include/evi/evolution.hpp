#pragma once

#include "evi/forcing.hpp"
#include "evi/obstacle.hpp"

namespace evi {

struct StepDiagnostics {
  int iterations = 0;
  double comp_residual = 0.0;
  double ls_lower_margin = 0.0;
  double ls_upper_margin = 0.0;
  double irreversibility_gap = 0.0;  // min over nodes of z_{k-1} - z_k
};

// Snapshots z_0..z_m of one minimizing-movement run plus the step data
// needed to audit it: averaged forcings f_1..f_m, multipliers, diagnostics.
// epsilon > 0 tags a parabolic-regularized run (extra mass epsilon/tau).
struct Trajectory {
  TimeGrid grid;
  double epsilon = 0.0;
  std::vector<Vec> snapshots;
  std::vector<Vec> forcing_avgs;
  std::vector<Vec> multipliers;
  std::vector<StepDiagnostics> steps;

  double extra_mass() const { return epsilon == 0.0 ? 0.0 : epsilon / grid.tau(); }
};

struct AdmissibilityReport {
  bool pass = false;
  double worst = 0.0;  // max over nodes of rho(z0) - f(.,0); pass iff <= tol
  int worst_node = -1;
};

// Initial-data compatibility: K z0 - M f(.,0) <= 0 nodewise (with lumped
// mass the dual-cone inequality reduces to nodal signs).
AdmissibilityReport check_admissible_initial(const Vec& z0, const ForcingSampler& f,
                                             const DiscreteOperators& ops,
                                             double tol = defaults::admissibility_tol);

struct RunOptions {
  bool require_admissible = true;
  double admissibility_tol = defaults::admissibility_tol;
  double envelope_tol = 1e-7;  // guard on the declared lower envelope
};

// The scheme: for k = 1..m solve the upper-obstacle step with psi = z_{k-1},
// g = f_k, warm-started at z_{k-1}. epsilon > 0 adds (epsilon/tau) M to the
// operator (implicit step of the parabolic regularization).
Trajectory run_minimizing_movement(const DiscreteOperators& ops, const Vec& z0,
                                   const ForcingSampler& f, const TimeGrid& grid,
                                   const SolverConfig& solver, const RunOptions& opts = {},
                                   double epsilon = 0.0);

enum class InterpolantKind { Linear, Constant };

// Piecewise-linear / piecewise-constant interpolants; both equal z_0 at t=0
// and z_k at grid points.
Vec eval_interpolant(const Trajectory& traj, double t, InterpolantKind kind);

struct AprioriReport {
  double rate_sum = 0.0;      // tau * sum ||(z_k - z_{k-1})/tau||_V^2
  double dtf_norm_sq = 0.0;   // ||dtf||_{L2(0,T;V*)}^2
  double ratio = 0.0;
  double sandwich_lower_margin = 0.0;  // min over k, nodes of q_k - min(f_hat, rho(z0))
  double sandwich_upper_margin = 0.0;  // min over k, nodes of f_k - q_k
  bool sandwich_pass = false;
  double pointwise_bound_margin = 0.0;  // min over k of 2(.) - ||q_k||_L2^2
  bool pointwise_pass = false;
  bool dt_approx = false;
};

AprioriReport apriori_report(const Trajectory& traj, const ForcingSampler& f,
                             const DiscreteOperators& ops,
                             double ls_tol = defaults::ls_margin_tol);

struct ForcingInterpolationReport {
  // One evaluation of the difference-quotient estimate per ladder entry:
  // lhs(m) = tau * sum ||(f_k - f_{k-1})/tau||_{V*}^2, bound rhs = 4 ||dtf||^2.
  std::vector<int> ladder_m;
  std::vector<double> lhs;
  double rhs = 0.0;
  double worst_margin = 0.0;  // min over ladder of rhs - lhs
  bool quotient_bound_pass = false;
  // || f_bar_tau - f ||_{L2(0,T;L2)} across the ladder.
  std::vector<double> const_interp_error;
  bool monotone_decreasing = false;
  double fitted_slope = 0.0;  // log-log slope of error vs tau
  bool dt_approx = false;
};

ForcingInterpolationReport forcing_interpolation_check(const ForcingSampler& f,
                                                       const DiscreteOperators& ops, double T,
                                                       const std::vector<int>& ladder_m);

}  // namespace evi
