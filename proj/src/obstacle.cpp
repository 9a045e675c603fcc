#include "evi/obstacle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>

namespace evi {

namespace {

void check_problem(const ObstacleProblem& prob) {
  if (!prob.ops) throw std::invalid_argument("obstacle problem has no operators");
  prob.ops->require_size(prob.psi, "psi");
  prob.ops->require_size(prob.g, "g");
  if (prob.extra_mass < 0.0) throw std::invalid_argument("extra_mass must be nonnegative");
}

// Right-hand side of the LCP: M g + c M psi.
Vec rhs_vector(const ObstacleProblem& prob) {
  const auto& ops = *prob.ops;
  Vec b(ops.n_free());
  for (int i = 0; i < ops.n_free(); ++i)
    b[i] = ops.M[i] * prob.g[i] + prob.extra_mass * ops.M[i] * prob.psi[i];
  return b;
}

Vec multiplier_from(const ObstacleProblem& prob, const Vec& z) {
  Vec q = lcp_residual(prob, z);
  Vec lam(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) lam[i] = prob.g[i] - q[i];
  return lam;
}

ObstacleSolution finish(const ObstacleProblem& prob, Vec z, int iterations,
                        const char* method, bool clipped) {
  // Primal feasibility exactly: the projection below only trims inactive-node
  // overshoot at the inner-solver tolerance scale.
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::min(z[i], prob.psi[i]);
  ObstacleSolution sol;
  sol.comp_residual = complementarity_residual(prob, z);
  sol.multiplier = multiplier_from(prob, z);
  sol.z = std::move(z);
  sol.iterations = iterations;
  sol.method = method;
  sol.warm_start_clipped = clipped;
  return sol;
}

Vec start_point(const ObstacleProblem& prob, const SolverConfig& cfg, bool* clipped) {
  *clipped = false;
  if (cfg.warm_start) {
    prob.ops->require_size(*cfg.warm_start, "warm_start");
    Vec z = *cfg.warm_start;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (z[i] > prob.psi[i]) {
        z[i] = prob.psi[i];
        *clipped = true;
      }
    return z;
  }
  return prob.psi;
}

ObstacleSolution solve_psor(const ObstacleProblem& prob, const SolverConfig& cfg) {
  const auto& ops = *prob.ops;
  const int n = ops.n_free();
  const double c = prob.extra_mass;
  if (!(cfg.omega > 0.0 && cfg.omega < 2.0))
    throw std::invalid_argument("PSOR omega must be in (0,2)");

  bool clipped = false;
  Vec z = start_point(prob, cfg, &clipped);
  const Vec b = rhs_vector(prob);
  const int max_sweeps = cfg.max_iter > 0 ? cfg.max_iter : defaults::psor_max_iter_factor * n;
  const SparseMatrix& K = ops.K;

  double merit = complementarity_residual(prob, z);
  int sweep = 0;
  for (; sweep < max_sweeps && merit > cfg.tol; ++sweep) {
    for (int i = 0; i < n; ++i) {
      double s = c * ops.M[i] * z[i];
      for (int k = K.row_ptr[i]; k < K.row_ptr[i + 1]; ++k) s += K.val[k] * z[K.col[k]];
      const double dii = K.diag(i) + c * ops.M[i];
      const double cand = z[i] + cfg.omega * (b[i] - s) / dii;
      z[i] = std::min(prob.psi[i], cand);
    }
    if (cfg.sweep_observer) cfg.sweep_observer(sweep + 1, z);
    merit = complementarity_residual(prob, z);
  }
  if (merit > cfg.tol)
    throw SolveError("PSOR exceeded " + std::to_string(max_sweeps) +
                         " sweeps, merit residual " + std::to_string(merit),
                     merit, sweep);
  return finish(prob, std::move(z), sweep, "psor", clipped);
}

std::string active_key(const std::vector<char>& active) {
  return std::string(active.begin(), active.end());
}

ObstacleSolution solve_pdas(const ObstacleProblem& prob, const SolverConfig& cfg) {
  const auto& ops = *prob.ops;
  const int n = ops.n_free();
  const double c = prob.extra_mass;

  bool clipped = false;
  Vec z = start_point(prob, cfg, &clipped);
  const Vec b = rhs_vector(prob);

  // Initial active set: warm-start contact nodes, else empty.
  std::vector<char> active(n, 0);
  if (cfg.warm_start)
    for (int i = 0; i < n; ++i) active[i] = z[i] == prob.psi[i] ? 1 : 0;

  std::set<std::string> seen;
  seen.insert(active_key(active));

  const int cg_max = defaults::cg_max_iter_factor * std::max(n, 50);
  int outer = 0;
  for (; outer < defaults::pdas_max_outer; ++outer) {
    // Solve the reduced system on the inactive set with z = psi on the
    // active set folded into the right-hand side.
    std::vector<char> inactive(n);
    Vec zfix(n, 0.0);
    int n_inactive = 0;
    for (int i = 0; i < n; ++i) {
      inactive[i] = active[i] ? 0 : 1;
      n_inactive += inactive[i];
      zfix[i] = active[i] ? prob.psi[i] : 0.0;
    }
    Vec reduced_rhs = ops.K.matvec(zfix);
    for (int i = 0; i < n; ++i) {
      reduced_rhs[i] = b[i] - reduced_rhs[i] - c * ops.M[i] * zfix[i];
      if (!inactive[i]) reduced_rhs[i] = 0.0;
    }
    if (n_inactive > 0) {
      Vec guess = z;
      CgResult r = cg_jacobi(ops.K, &ops.M, c, reduced_rhs, defaults::cg_rel_tol, cg_max,
                             &inactive, &guess);
      if (!r.converged)
        throw SolveError("PDAS inner CG stalled, relative residual " +
                             std::to_string(r.rel_residual),
                         r.rel_residual, r.iterations);
      for (int i = 0; i < n; ++i) z[i] = active[i] ? prob.psi[i] : r.x[i];
    } else {
      z = prob.psi;
    }

    const Vec lam = multiplier_from(prob, z);
    std::vector<char> next(n, 0);
    for (int i = 0; i < n; ++i) {
      // Ties (lambda = 0 and z = psi) classify as active.
      next[i] = (active[i] ? lam[i] >= 0.0 : z[i] >= prob.psi[i]) ? 1 : 0;
    }
    if (next == active) {
      ObstacleSolution sol = finish(prob, std::move(z), outer + 1, "pdas", clipped);
      if (sol.comp_residual <= cfg.tol) return sol;
      // Inner-solve tolerance left the merit above target: polish with PSOR.
      SolverConfig polish = cfg;
      polish.warm_start = sol.z;
      polish.sweep_observer = nullptr;
      ObstacleSolution refined = solve_psor(prob, polish);
      refined.method = "pdas";
      refined.iterations += sol.iterations;
      refined.warm_start_clipped = clipped;
      return refined;
    }
    const std::string key = active_key(next);
    if (seen.count(key)) break;  // cycle: cannot happen for M-matrices, guarded anyway
    seen.insert(key);
    active = std::move(next);
  }

  // Cycling or budget exhaustion: fall back to PSOR from the last iterate.
  SolverConfig fallback = cfg;
  fallback.warm_start = z;
  fallback.sweep_observer = nullptr;
  ObstacleSolution sol = solve_psor(prob, fallback);
  sol.method = "pdas+psor";
  sol.iterations += outer;
  return sol;
}

}  // namespace

Vec lcp_residual(const ObstacleProblem& prob, const Vec& z) {
  check_problem(prob);
  prob.ops->require_size(z, "z");
  Vec q = nodal_elliptic_residual(*prob.ops, z);
  if (prob.extra_mass != 0.0)
    for (std::size_t i = 0; i < q.size(); ++i)
      q[i] += prob.extra_mass * (z[i] - prob.psi[i]);
  return q;
}

double complementarity_residual(const ObstacleProblem& prob, const Vec& z) {
  const Vec q = lcp_residual(prob, z);
  double merit = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double gap = prob.psi[i] - z[i];
    const double lam = prob.g[i] - q[i];
    merit = std::max(merit, std::max(-gap, 0.0));
    merit = std::max(merit, std::max(-lam, 0.0));
    merit = std::max(merit, std::abs(std::min(gap, lam)));
  }
  return merit;
}

double j_value(const ObstacleProblem& prob, const Vec& z) {
  check_problem(prob);
  prob.ops->require_size(z, "z");
  const auto& ops = *prob.ops;
  const Vec kz = ops.K.matvec(z);
  double v = 0.0;
  for (int i = 0; i < ops.n_free(); ++i) {
    const double dz = z[i] - prob.psi[i];
    v += 0.5 * z[i] * kz[i] + 0.5 * prob.extra_mass * ops.M[i] * dz * dz -
         ops.M[i] * prob.g[i] * z[i];
  }
  return v;
}

ObstacleSolution solve(const ObstacleProblem& prob, const SolverConfig& cfg) {
  check_problem(prob);
  switch (cfg.method) {
    case ObstacleMethod::PSOR: return solve_psor(prob, cfg);
    case ObstacleMethod::PDAS: return solve_pdas(prob, cfg);
  }
  throw std::invalid_argument("unknown obstacle method");
}

ObstacleSolution solve_bruteforce(const ObstacleProblem& prob) {
  check_problem(prob);
  const auto& ops = *prob.ops;
  const int n = ops.n_free();
  if (n > 15)
    throw std::invalid_argument("brute-force enumeration capped at 15 dofs, got " +
                                std::to_string(n));

  auto kc = ops.K.dense();
  for (int i = 0; i < n; ++i) kc[i][i] += prob.extra_mass * ops.M[i];
  const Vec b = rhs_vector(prob);
  const double accept_tol = 1e-10;

  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> inactive;
    for (int i = 0; i < n; ++i)
      if (!(mask & (1u << i))) inactive.push_back(i);

    Vec z(n);
    for (int i = 0; i < n; ++i) z[i] = prob.psi[i];
    if (!inactive.empty()) {
      const int ni = static_cast<int>(inactive.size());
      std::vector<std::vector<double>> sub(ni, std::vector<double>(ni));
      Vec rhs(ni);
      for (int a = 0; a < ni; ++a) {
        const int i = inactive[a];
        double r = b[i];
        for (int j = 0; j < n; ++j)
          if (mask & (1u << j)) r -= kc[i][j] * prob.psi[j];
        rhs[a] = r;
        for (int bcol = 0; bcol < ni; ++bcol) sub[a][bcol] = kc[i][inactive[bcol]];
      }
      const Vec zi = dense_cholesky_solve(std::move(sub), std::move(rhs));
      for (int a = 0; a < ni; ++a) z[inactive[a]] = zi[a];
    }

    bool ok = true;
    for (int i : inactive)
      if (z[i] > prob.psi[i] + accept_tol) {
        ok = false;
        break;
      }
    if (ok)
      for (int i = 0; i < n && ok; ++i) {
        if (!(mask & (1u << i))) continue;
        double kz = 0.0;
        for (int j = 0; j < n; ++j) kz += kc[i][j] * z[j];
        const double lam = (b[i] - kz) / ops.M[i];
        if (lam < -accept_tol) ok = false;
      }
    if (ok) return finish(prob, std::move(z), static_cast<int>(mask) + 1, "bruteforce", false);
  }
  throw SolveError("brute force accepted no active set; assembled operators are inconsistent",
                   0.0, 1 << n);
}

LewyStampacchiaReport check_lewy_stampacchia(const ObstacleProblem& prob,
                                             const ObstacleSolution& sol, double tol) {
  const Vec q_z = lcp_residual(prob, sol.z);
  const Vec q_psi = lcp_residual(prob, prob.psi);  // extra-mass term vanishes at psi
  const Vec lower = pointwise_min(prob.g, q_psi);
  LewyStampacchiaReport rep;
  rep.lower_margin = rep.upper_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < q_z.size(); ++i) {
    rep.lower_margin = std::min(rep.lower_margin, q_z[i] - lower[i]);
    rep.upper_margin = std::min(rep.upper_margin, prob.g[i] - q_z[i]);
  }
  rep.pass = rep.lower_margin >= -tol && rep.upper_margin >= -tol;
  return rep;
}

ComparisonReport check_comparison(const ObstacleProblem& p1, const ObstacleProblem& p2,
                                  const SolverConfig& cfg, double tol) {
  check_problem(p1);
  check_problem(p2);
  if (p1.ops != p2.ops) throw std::invalid_argument("comparison requires a shared mesh");
  if (p1.extra_mass != p2.extra_mass)
    throw std::invalid_argument("comparison requires equal extra_mass");

  ComparisonReport rep;
  rep.hypothesis_ok = true;
  for (std::size_t i = 0; i < p1.psi.size(); ++i)
    if (p1.psi[i] > p2.psi[i] || p1.g[i] > p2.g[i]) {
      rep.hypothesis_ok = false;
      return rep;  // explicit rejection, no solve
    }
  const ObstacleSolution s1 = solve(p1, cfg);
  const ObstacleSolution s2 = solve(p2, cfg);
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s1.z.size(); ++i)
    rep.min_gap = std::min(rep.min_gap, s2.z[i] - s1.z[i]);
  rep.pass = rep.min_gap >= -tol;
  return rep;
}

}  // namespace evi
