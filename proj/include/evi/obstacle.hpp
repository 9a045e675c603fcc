#pragma once

#include <functional>
#include <optional>
#include <string>

#include "evi/mesh.hpp"

namespace evi {

// One static upper-obstacle instance: minimize
//   J(z) = 1/2 z'Kz + extra_mass/2 (z-psi)'M(z-psi) - (Mg).z   over  z <= psi.
// extra_mass > 0 is how the parabolic-regularized step reuses this solver.
struct ObstacleProblem {
  const DiscreteOperators* ops = nullptr;
  Vec psi;
  Vec g;
  double extra_mass = 0.0;
};

enum class ObstacleMethod { PSOR, PDAS };

struct SolverConfig {
  ObstacleMethod method = ObstacleMethod::PDAS;
  double omega = defaults::psor_omega;  // PSOR relaxation, in (0,2)
  double tol = defaults::obstacle_tol;  // merit residual
  int max_iter = 0;                     // 0 -> 100*n sweeps (PSOR)
  std::optional<Vec> warm_start;
  // Test hook: called with (sweep index, current iterate) after each PSOR sweep.
  std::function<void(int, const Vec&)> sweep_observer;
};

struct ObstacleSolution {
  Vec z;
  Vec multiplier;  // lambda = g - q(z) >= 0, the discrete nonnegative multiplier
  int iterations = 0;
  double comp_residual = 0.0;
  std::string method;
  bool warm_start_clipped = false;
};

// Nodal residual of the (possibly mass-augmented) operator:
//   q(z) = M^{-1}(K z) + extra_mass * (z - psi).
Vec lcp_residual(const ObstacleProblem& prob, const Vec& z);

// Merit: max over nodes of primal violation (z-psi)_+, dual violation
// (q-g)_+, and complementarity defect |min(psi-z, g-q)|. Zero iff exact.
double complementarity_residual(const ObstacleProblem& prob, const Vec& z);

double j_value(const ObstacleProblem& prob, const Vec& z);

ObstacleSolution solve(const ObstacleProblem& prob, const SolverConfig& cfg);

// Active-set enumeration over all 2^n subsets; independent oracle (dense
// Cholesky, no CG). Requires n <= 15.
ObstacleSolution solve_bruteforce(const ObstacleProblem& prob);

struct LewyStampacchiaReport {
  bool pass = false;
  double lower_margin = 0.0;  // min over nodes of q(z) - min(g, q(psi))
  double upper_margin = 0.0;  // min over nodes of g - q(z)
};

LewyStampacchiaReport check_lewy_stampacchia(const ObstacleProblem& prob,
                                             const ObstacleSolution& sol,
                                             double tol = defaults::ls_margin_tol);

struct ComparisonReport {
  bool hypothesis_ok = false;
  bool pass = false;
  double min_gap = 0.0;  // min over nodes of z2 - z1
};

// Hypothesis psi1 <= psi2, g1 <= g2 is checked first; on violation no solve
// is attempted.
ComparisonReport check_comparison(const ObstacleProblem& p1, const ObstacleProblem& p2,
                                  const SolverConfig& cfg, double tol = 1e-10);

}  // namespace evi
