#include "evi/regularized.hpp"

#include <algorithm>
#include <cmath>

namespace evi {

Trajectory run_regularized(const DiscreteOperators& ops, const Vec& z0, const ForcingSampler& f,
                           const TimeGrid& grid, double epsilon, const SolverConfig& solver,
                           const RunOptions& opts) {
  return run_minimizing_movement(ops, z0, f, grid, solver, opts, epsilon);
}

SingularLimitReport singular_limit_study(const DiscreteOperators& ops, const Vec& z0,
                                         const ForcingSampler& f, const TimeGrid& grid,
                                         const std::vector<double>& eps_list,
                                         const SolverConfig& solver) {
  SingularLimitReport rep;
  rep.epsilons = eps_list;
  for (double e : eps_list)
    if (!(e > 0.0)) throw std::invalid_argument("epsilon ladder entries must be positive");

  const Trajectory ref = run_minimizing_movement(ops, z0, f, grid, solver);
  for (double eps : eps_list) {
    const Trajectory te = run_regularized(ops, z0, f, grid, eps, solver);
    double dev = 0.0;
    for (int k = 0; k <= grid.m; ++k) {
      Vec d(ops.n_free());
      for (int i = 0; i < ops.n_free(); ++i)
        d[i] = te.snapshots[k][i] - ref.snapshots[k][i];
      dev = std::max(dev, norm_v(ops, d));
    }
    rep.deviations.push_back(dev);
  }

  // Monotone: D nonincreasing as eps decreases (ladder given largest first
  // or not; order by eps explicitly).
  std::vector<std::size_t> order(eps_list.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return eps_list[a] < eps_list[b]; });
  rep.monotone = true;
  for (std::size_t i = 1; i < order.size(); ++i)
    if (rep.deviations[order[i]] < rep.deviations[order[i - 1]] - 1e-13) rep.monotone = false;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (rep.deviations[i] <= 1e-14) continue;
    const double lx = std::log(eps_list[i]);
    const double ly = std::log(rep.deviations[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++cnt;
  }
  rep.all_zero = cnt == 0;
  rep.fitted_slope = cnt >= 2 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;
  return rep;
}

}  // namespace evi
