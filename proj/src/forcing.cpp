#include "evi/forcing.hpp"

#include <cmath>
#include <stdexcept>

namespace evi {

void TimeGrid::validate() const {
  if (!(T > 0.0)) throw std::invalid_argument("time horizon must be positive");
  if (m < 1) throw std::invalid_argument("time grid needs at least one step");
}

namespace {

// 3-point Gauss-Legendre on [-1,1].
constexpr double kGaussNode = 0.7745966692414834;  // sqrt(3/5)
constexpr double kGaussW0 = 8.0 / 9.0;
constexpr double kGaussW1 = 5.0 / 9.0;

}  // namespace

double integrate_time(const std::function<double(double)>& fn, double t0, double t1,
                      int intervals) {
  const double h = (t1 - t0) / intervals;
  double total = 0.0;
  for (int k = 0; k < intervals; ++k) {
    const double mid = t0 + (k + 0.5) * h;
    const double half = 0.5 * h;
    total += half * (kGaussW0 * fn(mid) + kGaussW1 * fn(mid - half * kGaussNode) +
                     kGaussW1 * fn(mid + half * kGaussNode));
  }
  return total;
}

Vec sample_nodal(const ForcingSampler& f, const DiscreteOperators& ops, double t) {
  if (!f.eval) throw std::invalid_argument("forcing sampler has no eval");
  Vec out(ops.n_free());
  for (int i = 0; i < ops.n_free(); ++i) out[i] = f.eval(ops.coords[i], t);
  return out;
}

Vec average_forcing(const ForcingSampler& f, const DiscreteOperators& ops, const TimeGrid& grid,
                    int k) {
  grid.validate();
  if (k < 0 || k > grid.m) throw std::invalid_argument("average_forcing: step index out of range");
  if (k == 0) return sample_nodal(f, ops, 0.0);
  const double t0 = grid.t(k - 1);
  const double t1 = grid.t(k);
  Vec out(ops.n_free());
  if (f.average) {
    for (int i = 0; i < ops.n_free(); ++i) out[i] = f.average(ops.coords[i], t0, t1);
    return out;
  }
  const double mid = 0.5 * (t0 + t1);
  const double half = 0.5 * (t1 - t0);
  for (int i = 0; i < ops.n_free(); ++i) {
    const Coord& p = ops.coords[i];
    out[i] = 0.5 * (kGaussW0 * f.eval(p, mid) + kGaussW1 * f.eval(p, mid - half * kGaussNode) +
                    kGaussW1 * f.eval(p, mid + half * kGaussNode));
  }
  return out;
}

Vec sample_dt_nodal(const ForcingSampler& f, const DiscreteOperators& ops, double t,
                    double fd_step, bool* approx) {
  Vec out(ops.n_free());
  if (f.dt) {
    if (approx) *approx = false;
    for (int i = 0; i < ops.n_free(); ++i) out[i] = f.dt(ops.coords[i], t);
    return out;
  }
  if (approx) *approx = true;
  const double h = fd_step > 0.0 ? fd_step : 1e-6;
  const double lo = t - h;
  for (int i = 0; i < ops.n_free(); ++i) {
    const Coord& p = ops.coords[i];
    if (lo >= 0.0)
      out[i] = (f.eval(p, t + h) - f.eval(p, lo)) / (2.0 * h);
    else
      out[i] = (f.eval(p, t + h) - f.eval(p, t)) / h;
  }
  return out;
}

double dtf_vstar_l2_sq(const ForcingSampler& f, const DiscreteOperators& ops, double T,
                       int intervals, double fd_step, bool* approx) {
  bool any_approx = false;
  auto integrand = [&](double t) {
    bool a = false;
    const Vec d = sample_dt_nodal(f, ops, t, fd_step, &a);
    any_approx = any_approx || a;
    const double nrm = norm_vstar(ops, load_from_density(ops, d));
    return nrm * nrm;
  };
  const double value = integrate_time(integrand, 0.0, T, intervals);
  if (approx) *approx = any_approx;
  return value;
}

}  // namespace evi
