#include "evi/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evi/rng.hpp"

namespace evi {

double energy(const DiscreteOperators& ops, const Vec& w, const Vec& f_nodal) {
  ops.require_size(w, "w");
  ops.require_size(f_nodal, "f");
  const Vec kw = ops.K.matvec(w);
  double e = 0.0;
  for (int i = 0; i < ops.n_free(); ++i)
    e += 0.5 * w[i] * kw[i] - ops.M[i] * f_nodal[i] * w[i];
  return e;
}

EnergyBalanceReport energy_balance_check(const Trajectory& traj, const ForcingSampler& f,
                                         const DiscreteOperators& ops) {
  const TimeGrid& grid = traj.grid;
  const double tau = grid.tau();
  EnergyBalanceReport rep;
  rep.energies.reserve(grid.m + 1);

  // S_k = E(z_k, t_k) + P_k with P_k the trapezoid prefix of int (M dtf).z;
  // every window residual is a difference S_k - S_j, so max |R| is the spread.
  std::vector<double> s_values(grid.m + 1, 0.0);
  double prefix = 0.0;
  double prev_term = 0.0;
  for (int k = 0; k <= grid.m; ++k) {
    const double tk = grid.t(k);
    const Vec fk = sample_nodal(f, ops, tk);
    const double e = energy(ops, traj.snapshots[k], fk);
    rep.energies.push_back(e);

    bool approx = false;
    const Vec dtf = sample_dt_nodal(f, ops, tk, tau * defaults::fd_dt_fraction, &approx);
    rep.dt_approx = rep.dt_approx || approx;
    double term = 0.0;
    for (int i = 0; i < ops.n_free(); ++i) term += ops.M[i] * dtf[i] * traj.snapshots[k][i];
    if (k > 0) prefix += 0.5 * tau * (prev_term + term);
    prev_term = term;
    s_values[k] = e + prefix;
  }
  const auto [lo, hi] = std::minmax_element(s_values.begin(), s_values.end());
  rep.max_window_residual = *hi - *lo;
  return rep;
}

UnilateralReport unilateral_minimality_probe(const Trajectory& traj, const ForcingSampler& f,
                                             const DiscreteOperators& ops, int trials,
                                             std::uint64_t seed, double rel_tol,
                                             bool skip_initial) {
  const TimeGrid& grid = traj.grid;
  const int n = ops.n_free();
  const double c = traj.extra_mass();
  static constexpr double kDeltas[] = {1e-3, 1e-2, 1e-1, 1.0};

  UnilateralReport rep;
  rep.seed = seed;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  rep.worst_sampled_margin = std::numeric_limits<double>::infinity();
  SplitMix64 rng(seed);

  for (int k = skip_initial ? 1 : 0; k <= grid.m; ++k) {
    const Vec& zk = traj.snapshots[k];
    // Pair the energy with the forcing the step actually minimized against.
    const Vec f_step = k == 0 ? sample_nodal(f, ops, 0.0) : traj.forcing_avgs[k - 1];
    const Vec f_inst = sample_nodal(f, ops, grid.t(k));
    const double e_base = energy(ops, zk, f_step);
    const double e_inst = energy(ops, zk, f_inst);

    // r = K z_k + c M (z_k - z_{k-1}) - M f_step <= 0 by dual feasibility.
    Vec r = ops.K.matvec(zk);
    for (int i = 0; i < n; ++i) {
      if (k > 0 && c != 0.0) r[i] += c * ops.M[i] * (zk[i] - traj.snapshots[k - 1][i]);
      r[i] -= ops.M[i] * f_step[i];
    }
    const double tol_abs = rel_tol * std::max(1.0, std::abs(e_base));

    for (int trial = 0; trial < trials; ++trial) {
      Vec phi(n);
      for (int i = 0; i < n; ++i) phi[i] = rng.uniform();
      double r_phi = 0.0;
      for (int i = 0; i < n; ++i) r_phi += r[i] * phi[i];
      for (double delta : kDeltas) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = zk[i] - delta * phi[i];
        const double linear = -delta * r_phi;  // r . (v - z_k), must be >= 0
        const double d_e = energy(ops, v, f_step) - e_base;
        const double chain = d_e - linear;     // quadratic remainder, must be >= 0
        const double margin = std::min({linear, chain, d_e});
        if (margin < rep.worst_margin) {
          rep.worst_margin = margin;
          rep.worst_step = k;
        }
        if (margin < -tol_abs) ++rep.violations;
        rep.worst_sampled_margin =
            std::min(rep.worst_sampled_margin, energy(ops, v, f_inst) - e_inst);
        ++rep.trials;
      }
    }
  }
  return rep;
}

namespace {

// Produce the per-step averaged forcings without running any solve.
std::vector<Vec> forcing_ladder(const ForcingSampler& f, const DiscreteOperators& ops,
                                const TimeGrid& grid) {
  std::vector<Vec> out;
  out.reserve(grid.m + 1);
  for (int k = 0; k <= grid.m; ++k) out.push_back(average_forcing(f, ops, grid, k));
  return out;
}

}  // namespace

ComparisonStudyReport comparison_study(const DiscreteOperators& ops, const Vec& z0_1,
                                       const ForcingSampler& f1, const Vec& z0_2,
                                       const ForcingSampler& f2, const TimeGrid& grid,
                                       const SolverConfig& solver, double tol) {
  ComparisonStudyReport rep;
  ops.require_size(z0_1, "z0_1");
  ops.require_size(z0_2, "z0_2");

  rep.hypothesis_ok = true;
  for (int i = 0; i < ops.n_free(); ++i)
    if (z0_1[i] > z0_2[i] + 1e-12) rep.hypothesis_ok = false;
  const auto lad1 = forcing_ladder(f1, ops, grid);
  const auto lad2 = forcing_ladder(f2, ops, grid);
  for (int k = 0; k <= grid.m && rep.hypothesis_ok; ++k)
    for (int i = 0; i < ops.n_free(); ++i)
      if (lad1[k][i] > lad2[k][i] + 1e-12) {
        rep.hypothesis_ok = false;
        break;
      }
  if (!rep.hypothesis_ok) return rep;  // rejected before any solve

  const Trajectory t1 = run_minimizing_movement(ops, z0_1, f1, grid, solver);
  const Trajectory t2 = run_minimizing_movement(ops, z0_2, f2, grid, solver);
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= grid.m; ++k)
    for (int i = 0; i < ops.n_free(); ++i)
      rep.min_gap = std::min(rep.min_gap, t2.snapshots[k][i] - t1.snapshots[k][i]);
  rep.pass = rep.min_gap >= -tol;
  return rep;
}

DependenceReport dependence_study(const DiscreteOperators& ops, const Vec& z0_1,
                                  const ForcingSampler& f1, const Vec& z0_2,
                                  const ForcingSampler& f2, const TimeGrid& grid,
                                  const SolverConfig& solver) {
  DependenceReport rep;
  const Trajectory t1 = run_minimizing_movement(ops, z0_1, f1, grid, solver);
  const Trajectory t2 = run_minimizing_movement(ops, z0_2, f2, grid, solver);

  Vec dz0(ops.n_free());
  for (int i = 0; i < ops.n_free(); ++i) dz0[i] = z0_1[i] - z0_2[i];
  double sup_f = 0.0;
  for (int k = 0; k <= grid.m; ++k) {
    Vec d(ops.n_free());
    const Vec a = sample_nodal(f1, ops, grid.t(k));
    const Vec b = sample_nodal(f2, ops, grid.t(k));
    for (int i = 0; i < ops.n_free(); ++i) d[i] = a[i] - b[i];
    sup_f = std::max(sup_f, norm_vstar(ops, load_from_density(ops, d)));

    Vec dz(ops.n_free());
    for (int i = 0; i < ops.n_free(); ++i)
      dz[i] = t1.snapshots[k][i] - t2.snapshots[k][i];
    rep.deviation = std::max(rep.deviation, norm_v(ops, dz));
  }
  const double fd = grid.tau() * defaults::fd_dt_fraction;
  const double dtf_l1 = integrate_time(
      [&](double t) {
        const Vec a = sample_dt_nodal(f1, ops, t, fd);
        const Vec b = sample_dt_nodal(f2, ops, t, fd);
        Vec d(ops.n_free());
        for (int i = 0; i < ops.n_free(); ++i) d[i] = a[i] - b[i];
        return norm_vstar(ops, load_from_density(ops, d));
      },
      0.0, grid.T, std::max(grid.m, 32));

  rep.data_distance = norm_v(ops, dz0) + sup_f + dtf_l1;
  rep.uniqueness_violation = rep.data_distance <= 1e-13 && rep.deviation > 1e-10;
  rep.ratio = rep.data_distance > 0.0 ? rep.deviation / rep.data_distance : 0.0;
  return rep;
}

EquilibriumSolution solve_equilibrium(const DiscreteOperators& ops, const Vec& z0,
                                      const Vec& f_inf, const SolverConfig& solver) {
  ObstacleProblem prob;
  prob.ops = &ops;
  prob.psi = z0;
  prob.g = f_inf;
  SolverConfig cfg = solver;
  cfg.warm_start = z0;
  const ObstacleSolution sol = solve(prob, cfg);

  EquilibriumSolution eq;
  eq.iterations = sol.iterations;
  eq.comp_residual = sol.comp_residual;
  const Vec q = lcp_residual(prob, sol.z);
  eq.complementarity = 0.0;
  for (int i = 0; i < ops.n_free(); ++i)
    eq.complementarity =
        std::max(eq.complementarity, std::abs(std::min(z0[i] - sol.z[i], f_inf[i] - q[i])));
  eq.z_inf = sol.z;
  eq.multiplier = sol.multiplier;
  return eq;
}

LongtimeReport longtime_study(const DiscreteOperators& ops, const Vec& z0,
                              const ForcingSampler& f, const std::vector<double>& horizons,
                              double tau, const SolverConfig& solver) {
  if (horizons.empty()) throw std::invalid_argument("longtime study needs horizons");
  if (f.f_infinity.empty())
    throw std::invalid_argument("longtime study needs a declared f_infinity");
  ops.require_size(f.f_infinity, "f_infinity");
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  for (std::size_t i = 1; i < horizons.size(); ++i)
    if (horizons[i] <= horizons[i - 1])
      throw std::invalid_argument("horizons must be strictly increasing");

  const double t_max = horizons.back();
  const int m = static_cast<int>(std::llround(t_max / tau));
  if (std::abs(m * tau - t_max) > 1e-9 * t_max)
    throw std::invalid_argument("largest horizon must be a multiple of tau");
  const TimeGrid grid{t_max, m};

  // Fixed tau, growing m: restriction to a shorter horizon is a prefix of
  // the same step sequence, so one long run covers every horizon.
  const Trajectory traj = run_minimizing_movement(ops, z0, f, grid, solver);

  // f >= f_inf at the sampled averages (long-time ordering hypothesis).
  for (int k = 1; k <= grid.m; ++k)
    for (int i = 0; i < ops.n_free(); ++i)
      if (traj.forcing_avgs[k - 1][i] < f.f_infinity[i] - 1e-9)
        throw std::invalid_argument("forcing drops below f_infinity at step " +
                                    std::to_string(k));

  const EquilibriumSolution eq = solve_equilibrium(ops, z0, f.f_infinity, solver);

  LongtimeReport rep;
  rep.horizons = horizons;
  rep.z_inf = eq.z_inf;
  for (double h : horizons) {
    const int k = static_cast<int>(std::llround(h / tau));
    if (k < 0 || k > grid.m || std::abs(k * tau - h) > 1e-9 * std::max(1.0, h))
      throw std::invalid_argument("horizon " + std::to_string(h) + " is not a tau multiple");
    Vec d(ops.n_free());
    for (int i = 0; i < ops.n_free(); ++i) d[i] = traj.snapshots[k][i] - eq.z_inf[i];
    rep.distances.push_back(norm_v(ops, d));
  }
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.distances.size(); ++i)
    if (rep.distances[i] > rep.distances[i - 1] + 1e-12) rep.monotone = false;
  rep.final_distance = rep.distances.back();
  rep.z_final = traj.snapshots.back();
  return rep;
}

}  // namespace evi
