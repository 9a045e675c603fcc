#pragma once

#include <functional>

#include "evi/mesh.hpp"

namespace evi {

// Uniform time grid: tau = T/m, t_k = k*tau.
struct TimeGrid {
  double T = 1.0;
  int m = 1;

  void validate() const;
  double tau() const { return T / m; }
  double t(int k) const { return k * tau(); }
};

// Time-dependent forcing sampled at node coordinates. `average` and `dt` are
// optional analytic shortcuts; when absent, a 3-point Gauss rule and central
// finite differences (dt = tau/100, flagged approximate) are used instead.
// `envelope` is the declared lower bound f_hat(x) <= f(x,t).
struct ForcingSampler {
  std::function<double(Coord, double)> eval;
  std::function<double(Coord, double, double)> average;  // mean over [t0, t1]
  std::function<double(Coord, double)> dt;
  Vec envelope;
  Vec f_infinity;          // long-time limit, empty when not declared
  bool stationary = false;
};

Vec sample_nodal(const ForcingSampler& f, const DiscreteOperators& ops, double t);

// f_k = mean of f over [t_{k-1}, t_k]; k = 0 returns the trace f(.,0).
Vec average_forcing(const ForcingSampler& f, const DiscreteOperators& ops,
                    const TimeGrid& grid, int k);

// Nodal dtf(., t). Falls back to central differences with step fd_step and
// sets *approx when doing so.
Vec sample_dt_nodal(const ForcingSampler& f, const DiscreteOperators& ops, double t,
                    double fd_step, bool* approx = nullptr);

// int_0^T || M dtf(t) ||_{V*}^2 dt by composite 3-point Gauss quadrature.
double dtf_vstar_l2_sq(const ForcingSampler& f, const DiscreteOperators& ops, double T,
                       int intervals, double fd_step, bool* approx = nullptr);

// Composite 3-point Gauss over [0,T] split into `intervals` panels of an
// arbitrary time integrand.
double integrate_time(const std::function<double(double)>& fn, double t0, double t1,
                      int intervals);

}  // namespace evi
