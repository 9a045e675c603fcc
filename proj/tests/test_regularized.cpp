#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evi/oracle.hpp"
#include "evi/regularized.hpp"

using namespace evi;

namespace {

constexpr double kPi = 3.14159265358979323846;

DiscreteOperators make_1d(int n, double sigma = 0.0) {
  MeshSpec spec;
  spec.dim = 1;
  spec.extent = {1.0, 1.0};
  spec.nodes = {n, 3};
  spec.boundary = {{Face::Left, BoundaryKind::Dirichlet}, {Face::Right, BoundaryKind::Dirichlet}};
  return build_mesh_and_operators(spec, sigma);
}

ForcingSampler drift_1d(double a, double s) {
  ForcingSampler f;
  f.eval = [a, s](Coord p, double t) { return (a - s * t) * std::sin(kPi * p.x); };
  f.average = [a, s](Coord p, double t0, double t1) {
    return (a - s * 0.5 * (t0 + t1)) * std::sin(kPi * p.x);
  };
  f.dt = [s](Coord p, double) { return -s * std::sin(kPi * p.x); };
  return f;
}

ForcingSampler stationary_field(double c) {
  ForcingSampler f;
  f.eval = [c](Coord, double) { return c; };
  f.average = [c](Coord, double, double) { return c; };
  f.dt = [](Coord, double) { return 0.0; };
  f.stationary = true;
  return f;
}

SolverConfig solver() {
  SolverConfig cfg;
  cfg.method = ObstacleMethod::PDAS;
  cfg.tol = 1e-11;
  return cfg;
}

}  // namespace

TEST_CASE("epsilon zero degenerates bit-exactly to the plain scheme") {
  const auto ops = make_1d(17);
  const int n = ops.n_free();
  const ForcingSampler f = drift_1d(0.25, 2.0);
  const TimeGrid grid{1.0, 16};
  const Trajectory plain = run_minimizing_movement(ops, Vec(n, 0.0), f, grid, solver());
  const Trajectory degen = run_regularized(ops, Vec(n, 0.0), f, grid, 0.0, solver());
  REQUIRE(plain.snapshots.size() == degen.snapshots.size());
  for (std::size_t k = 0; k < plain.snapshots.size(); ++k)
    CHECK(plain.snapshots[k] == degen.snapshots[k]);
  for (std::size_t k = 0; k < plain.multipliers.size(); ++k)
    CHECK(plain.multipliers[k] == degen.multipliers[k]);
}

TEST_CASE("stationary admissible data stay frozen for every epsilon") {
  const auto ops = make_1d(17);
  const int n = ops.n_free();
  const TimeGrid grid{1.0, 8};
  for (double eps : {0.0, 0.1, 1.0, 10.0}) {
    const Trajectory traj =
        run_regularized(ops, Vec(n, 0.0), stationary_field(0.5), grid, eps, solver());
    for (int k = 0; k <= grid.m; ++k)
      for (int i = 0; i < n; ++i) CHECK(traj.snapshots[k][i] == 0.0);
  }
}

TEST_CASE("a single regularized step matches the mass-augmented oracle") {
  SplitMix64 rng(606);
  for (int trial = 0; trial < 6; ++trial) {
    OracleInstance inst = random_oracle_instance(rng, 12);
    const int n = inst.ops.n_free();
    const double eps = rng.uniform(0.05, 1.0);
    const TimeGrid grid{0.5, 1};

    Vec base(n);
    for (int i = 0; i < n; ++i) base[i] = rng.uniform(-2.0, 1.0);
    ForcingSampler f;
    const auto coords = inst.ops.coords;
    f.eval = [base, coords](Coord p, double) {
      for (std::size_t i = 0; i < coords.size(); ++i)
        if (std::abs(coords[i].x - p.x) < 1e-12 && std::abs(coords[i].y - p.y) < 1e-12)
          return base[i];
      throw std::invalid_argument("off mesh");
    };
    f.dt = [](Coord, double) { return 0.0; };

    const Trajectory traj = run_regularized(inst.ops, Vec(n, 0.0), f, grid, eps, solver());
    ObstacleProblem prob{&inst.ops, Vec(n, 0.0), traj.forcing_avgs[0], eps / grid.tau()};
    const auto oracle = solve_bruteforce(prob);
    for (int i = 0; i < n; ++i)
      CHECK(traj.snapshots[1][i] == doctest::Approx(oracle.z[i]).epsilon(1e-10));
  }
}

TEST_CASE("irreversibility and complementarity hold for every epsilon") {
  const auto ops = make_1d(17);
  const int n = ops.n_free();
  const ForcingSampler f = drift_1d(0.25, 2.0);
  const TimeGrid grid{1.0, 16};
  for (double eps : {0.05, 0.25, 1.0}) {
    const Trajectory traj = run_regularized(ops, Vec(n, 0.0), f, grid, eps, solver());
    for (const auto& s : traj.steps) {
      CHECK(s.irreversibility_gap >= 0.0);
      CHECK(s.comp_residual <= 1e-11);
      CHECK(s.ls_lower_margin >= -1e-9);
      CHECK(s.ls_upper_margin >= -1e-9);
    }
  }
}

TEST_CASE("matched data: deviations shrink monotonically with the expected rate") {
  const auto ops = make_1d(17);
  const int n = ops.n_free();
  const ForcingSampler f = drift_1d(0.25, 2.0);
  // tau <= min(eps)/4
  const TimeGrid grid{1.0, 64};
  const std::vector<double> eps{1.0, 0.25, 0.0625};
  const auto rep = singular_limit_study(ops, Vec(n, 0.0), f, grid, eps, solver());
  REQUIRE(rep.deviations.size() == 3);
  CHECK(rep.monotone);
  CHECK_FALSE(rep.all_zero);
  CHECK(rep.deviations[0] > rep.deviations[2]);
  CHECK(rep.fitted_slope >= 0.45);
}

TEST_CASE("stationary data: all deviations vanish") {
  const auto ops = make_1d(9);
  const int n = ops.n_free();
  const TimeGrid grid{1.0, 32};
  const auto rep = singular_limit_study(ops, Vec(n, 0.0), stationary_field(0.5), grid,
                                        {1.0, 0.25}, solver());
  CHECK(rep.all_zero);
  CHECK(rep.monotone);
  for (double d : rep.deviations) CHECK(d == 0.0);
}

TEST_CASE("mismatched initial data plateau at the data distance") {
  const auto ops = make_1d(17);
  const int n = ops.n_free();
  const ForcingSampler f = drift_1d(0.25, 2.0);
  const TimeGrid grid{1.0, 64};
  Vec z0_eps(n), diff(n);
  for (int i = 0; i < n; ++i) {
    z0_eps[i] = -0.05 * std::sin(kPi * ops.coords[i].x);
    diff[i] = z0_eps[i];
  }
  const double data_gap = norm_v(ops, diff);
  const Trajectory ref = run_minimizing_movement(ops, Vec(n, 0.0), f, grid, solver());

  std::vector<double> devs;
  for (double eps : {0.25, 0.0625, 0.015625}) {
    const Trajectory te = run_regularized(ops, z0_eps, f, grid, eps, solver());
    double dev = 0.0;
    for (int k = 0; k <= grid.m; ++k) {
      Vec d(n);
      for (int i = 0; i < n; ++i) d[i] = te.snapshots[k][i] - ref.snapshots[k][i];
      dev = std::max(dev, norm_v(ops, d));
    }
    devs.push_back(dev);
  }
  // the deviation cannot drop below the initial-data distance: it plateaus
  for (double d : devs) CHECK(d >= data_gap - 1e-12);
  CHECK(devs.back() <= 3.0 * data_gap);
  CHECK(devs.back() >= 0.3 * devs.front());
}

TEST_CASE("regularized runs do not require admissible initial data") {
  const auto ops = make_1d(9);
  const int n = ops.n_free();
  // rho(z0) > f(.,0): the plain scheme rejects, the regularized one runs
  const ForcingSampler f = stationary_field(-1.0);
  CHECK_THROWS_AS(run_minimizing_movement(ops, Vec(n, 0.0), f, TimeGrid{1.0, 4}, solver()),
                  std::invalid_argument);
  const Trajectory traj = run_regularized(ops, Vec(n, 0.0), f, TimeGrid{1.0, 4}, 0.5, solver());
  CHECK(traj.snapshots.size() == 5);
  for (const auto& s : traj.steps) CHECK(s.comp_residual <= 1e-11);
}
