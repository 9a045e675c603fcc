#pragma once

// Solver-wide default tolerances. Inner (CG) solves sit two orders below the
// obstacle-solver merit tolerance so linear-algebra error never masks an LCP
// violation.
namespace evi::defaults {

inline constexpr double cg_rel_tol = 1e-12;
inline constexpr int cg_max_iter_factor = 20;     // max_iter = factor * n

inline constexpr double psor_omega = 1.5;
inline constexpr double obstacle_tol = 1e-10;     // merit residual
inline constexpr int psor_max_iter_factor = 100;  // sweeps = factor * n
inline constexpr int pdas_max_outer = 100;

inline constexpr double admissibility_tol = 1e-10;
inline constexpr double ls_margin_tol = 1e-9;
inline constexpr double fd_dt_fraction = 0.01;    // dt = tau / 100 for FD time derivatives

}  // namespace evi::defaults
