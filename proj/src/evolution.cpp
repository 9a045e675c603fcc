#include "evi/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace evi {

AdmissibilityReport check_admissible_initial(const Vec& z0, const ForcingSampler& f,
                                             const DiscreteOperators& ops, double tol) {
  ops.require_size(z0, "z0");
  const Vec rho = nodal_elliptic_residual(ops, z0);
  const Vec f0 = sample_nodal(f, ops, 0.0);
  AdmissibilityReport rep;
  rep.worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < ops.n_free(); ++i) {
    const double r = rho[i] - f0[i];
    if (r > rep.worst) {
      rep.worst = r;
      rep.worst_node = i;
    }
  }
  rep.pass = rep.worst <= tol;
  return rep;
}

Trajectory run_minimizing_movement(const DiscreteOperators& ops, const Vec& z0,
                                   const ForcingSampler& f, const TimeGrid& grid,
                                   const SolverConfig& solver, const RunOptions& opts,
                                   double epsilon) {
  grid.validate();
  ops.require_size(z0, "z0");
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be nonnegative");
  const Validation v = validate_problem(ops);
  if (!v.pass) throw std::invalid_argument("problem not well posed: " + v.message);
  if (opts.require_admissible) {
    const AdmissibilityReport adm = check_admissible_initial(z0, f, ops, opts.admissibility_tol);
    if (!adm.pass)
      throw std::invalid_argument(
          "initial data not admissible: residual - f(.,0) = " + std::to_string(adm.worst) +
          " at dof " + std::to_string(adm.worst_node) +
          " (assumption (iii); pass require_admissible=false to override)");
  }

  Trajectory traj;
  traj.grid = grid;
  traj.epsilon = epsilon;
  traj.snapshots.reserve(grid.m + 1);
  traj.snapshots.push_back(z0);
  const double c = epsilon == 0.0 ? 0.0 : epsilon / grid.tau();

  for (int k = 1; k <= grid.m; ++k) {
    ObstacleProblem prob;
    prob.ops = &ops;
    prob.psi = traj.snapshots.back();
    prob.g = average_forcing(f, ops, grid, k);
    prob.extra_mass = c;

    if (!f.envelope.empty()) {
      ops.require_size(f.envelope, "envelope");
      for (int i = 0; i < ops.n_free(); ++i)
        if (prob.g[i] < f.envelope[i] - opts.envelope_tol)
          throw std::invalid_argument("forcing dips below its declared lower envelope at step " +
                                      std::to_string(k) + " (assumption (ii))");
    }

    SolverConfig step_cfg = solver;
    step_cfg.warm_start = prob.psi;
    ObstacleSolution sol;
    try {
      sol = solve(prob, step_cfg);
    } catch (const SolveError& e) {
      throw SolveError("step " + std::to_string(k) + " failed: " + e.what(), e.residual,
                       e.iterations);
    }

    StepDiagnostics diag;
    diag.iterations = sol.iterations;
    diag.comp_residual = sol.comp_residual;
    const LewyStampacchiaReport ls = check_lewy_stampacchia(prob, sol);
    diag.ls_lower_margin = ls.lower_margin;
    diag.ls_upper_margin = ls.upper_margin;
    diag.irreversibility_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < ops.n_free(); ++i)
      diag.irreversibility_gap = std::min(diag.irreversibility_gap, prob.psi[i] - sol.z[i]);

    traj.forcing_avgs.push_back(std::move(prob.g));
    traj.multipliers.push_back(std::move(sol.multiplier));
    traj.snapshots.push_back(std::move(sol.z));
    traj.steps.push_back(diag);
  }
  return traj;
}

Vec eval_interpolant(const Trajectory& traj, double t, InterpolantKind kind) {
  const TimeGrid& grid = traj.grid;
  if (t < 0.0 || t > grid.T * (1.0 + 1e-12))
    throw std::invalid_argument("interpolant time outside [0, T]");
  if (t <= 0.0) return traj.snapshots.front();
  const double tau = grid.tau();
  int k = static_cast<int>(std::ceil(t / tau - 1e-12));
  k = std::clamp(k, 1, grid.m);
  if (kind == InterpolantKind::Constant) return traj.snapshots[k];
  const double theta = std::clamp((t - grid.t(k - 1)) / tau, 0.0, 1.0);
  const Vec& a = traj.snapshots[k - 1];
  const Vec& b = traj.snapshots[k];
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + theta * (b[i] - a[i]);
  return out;
}

AprioriReport apriori_report(const Trajectory& traj, const ForcingSampler& f,
                             const DiscreteOperators& ops, double ls_tol) {
  AprioriReport rep;
  const TimeGrid& grid = traj.grid;
  const double tau = grid.tau();

  // (a) tau * sum || (z_k - z_{k-1}) / tau ||_V^2 vs || dtf ||^2_{L2(0,T;V*)}.
  for (int k = 1; k <= grid.m; ++k) {
    Vec d(ops.n_free());
    for (int i = 0; i < ops.n_free(); ++i)
      d[i] = (traj.snapshots[k][i] - traj.snapshots[k - 1][i]) / tau;
    const double nv = norm_v(ops, d);
    rep.rate_sum += tau * nv * nv;
  }
  const int quad = std::max(4 * grid.m, 64);
  rep.dtf_norm_sq = dtf_vstar_l2_sq(f, ops, grid.T, quad, tau * defaults::fd_dt_fraction,
                                    &rep.dt_approx);
  rep.ratio = rep.dtf_norm_sq > 0.0 ? rep.rate_sum / rep.dtf_norm_sq
                                    : (rep.rate_sum == 0.0 ? 0.0
                                                           : std::numeric_limits<double>::infinity());

  // (b) nodewise chain f_hat ^ rho(z0) <= q_k <= f_k for every step, where
  // q_k = f_k - lambda_k is the per-step effective residual.
  Vec lower = nodal_elliptic_residual(ops, traj.snapshots.front());
  if (!f.envelope.empty()) lower = pointwise_min(f.envelope, lower);
  rep.sandwich_lower_margin = std::numeric_limits<double>::infinity();
  rep.sandwich_upper_margin = std::numeric_limits<double>::infinity();
  rep.pointwise_bound_margin = std::numeric_limits<double>::infinity();
  double lower_l2 = norm_l2(ops, lower);
  for (int k = 1; k <= grid.m; ++k) {
    const Vec& fk = traj.forcing_avgs[k - 1];
    const Vec& lam = traj.multipliers[k - 1];
    Vec q(ops.n_free());
    double q_l2_sq = 0.0;
    for (int i = 0; i < ops.n_free(); ++i) {
      q[i] = fk[i] - lam[i];
      q_l2_sq += ops.M[i] * q[i] * q[i];
      rep.sandwich_lower_margin = std::min(rep.sandwich_lower_margin, q[i] - lower[i]);
      rep.sandwich_upper_margin = std::min(rep.sandwich_upper_margin, lam[i]);
    }
    // (c) || q_k ||_L2^2 <= 2 (|| f_hat ^ rho(z0) ||_L2^2 + || f_k ||_L2^2)
    const double fk_l2 = norm_l2(ops, fk);
    rep.pointwise_bound_margin = std::min(
        rep.pointwise_bound_margin, 2.0 * (lower_l2 * lower_l2 + fk_l2 * fk_l2) - q_l2_sq);
  }
  rep.sandwich_pass =
      rep.sandwich_lower_margin >= -ls_tol && rep.sandwich_upper_margin >= -ls_tol;
  rep.pointwise_pass = rep.pointwise_bound_margin >= -ls_tol;
  return rep;
}

ForcingInterpolationReport forcing_interpolation_check(const ForcingSampler& f,
                                                       const DiscreteOperators& ops, double T,
                                                       const std::vector<int>& ladder_m) {
  if (ladder_m.empty()) throw std::invalid_argument("empty tau ladder");
  ForcingInterpolationReport rep;
  rep.ladder_m = ladder_m;

  const int finest = *std::max_element(ladder_m.begin(), ladder_m.end());
  const double fd = (T / finest) * defaults::fd_dt_fraction;
  rep.rhs = 4.0 * dtf_vstar_l2_sq(f, ops, T, std::max(4 * finest, 256), fd, &rep.dt_approx);

  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (int m : ladder_m) {
    const TimeGrid grid{T, m};
    const double tau = grid.tau();
    Vec prev = sample_nodal(f, ops, 0.0);  // f_0 is the trace at t = 0
    double lhs = 0.0;
    double const_err_sq = 0.0;
    for (int k = 1; k <= m; ++k) {
      const Vec fk = average_forcing(f, ops, grid, k);
      Vec quot(ops.n_free());
      for (int i = 0; i < ops.n_free(); ++i) quot[i] = (fk[i] - prev[i]) / tau;
      const double nrm = norm_vstar(ops, load_from_density(ops, quot));
      lhs += tau * nrm * nrm;
      // || f_k - f(t) ||_{L2}^2 integrated over the step.
      const_err_sq += integrate_time(
          [&](double t) {
            Vec d = sample_nodal(f, ops, t);
            for (int i = 0; i < ops.n_free(); ++i) d[i] = fk[i] - d[i];
            const double nl2 = norm_l2(ops, d);
            return nl2 * nl2;
          },
          grid.t(k - 1), grid.t(k), 1);
      prev = fk;
    }
    rep.lhs.push_back(lhs);
    rep.worst_margin = std::min(rep.worst_margin, rep.rhs - lhs);
    rep.const_interp_error.push_back(std::sqrt(std::max(0.0, const_err_sq)));
  }
  rep.quotient_bound_pass = rep.worst_margin >= -1e-9 * std::max(1.0, rep.rhs);

  rep.monotone_decreasing = true;
  for (std::size_t i = 1; i < rep.const_interp_error.size(); ++i)
    if (rep.const_interp_error[i] >= rep.const_interp_error[i - 1])
      rep.monotone_decreasing = false;

  // Least-squares slope of log(error) against log(tau).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t i = 0; i < rep.const_interp_error.size(); ++i) {
    if (rep.const_interp_error[i] <= 0.0) continue;
    const double lx = std::log(T / rep.ladder_m[i]);
    const double ly = std::log(rep.const_interp_error[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++cnt;
  }
  rep.fitted_slope = cnt >= 2 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;
  return rep;
}

}  // namespace evi
