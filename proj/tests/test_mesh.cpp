#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evi/mesh.hpp"
#include "evi/rng.hpp"

using namespace evi;

namespace {

MeshSpec dirichlet_1d(int n, double len = 1.0) {
  MeshSpec spec;
  spec.dim = 1;
  spec.extent = {len, 1.0};
  spec.nodes = {n, 3};
  spec.boundary = {{Face::Left, BoundaryKind::Dirichlet}, {Face::Right, BoundaryKind::Dirichlet}};
  return spec;
}

MeshSpec neumann_1d(int n, double len = 1.0) {
  MeshSpec spec = dirichlet_1d(n, len);
  spec.boundary = {{Face::Left, BoundaryKind::Neumann}, {Face::Right, BoundaryKind::Neumann}};
  return spec;
}

MeshSpec dirichlet_2d(int nx, int ny, double lx = 1.0, double ly = 1.0) {
  MeshSpec spec;
  spec.dim = 2;
  spec.extent = {lx, ly};
  spec.nodes = {nx, ny};
  spec.boundary = {{Face::Left, BoundaryKind::Dirichlet},
                   {Face::Right, BoundaryKind::Dirichlet},
                   {Face::Bottom, BoundaryKind::Dirichlet},
                   {Face::Top, BoundaryKind::Dirichlet}};
  return spec;
}

}  // namespace

TEST_CASE("1d dirichlet assembly matches the 3-point stencil") {
  const auto ops = build_mesh_and_operators(dirichlet_1d(5), 0.0);
  const double h = 0.25;
  REQUIRE(ops.n_free() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(ops.M[i] == doctest::Approx(h).epsilon(1e-15));
    CHECK(ops.A.entry(i, i) == doctest::Approx(2.0 / h).epsilon(1e-15));
    if (i > 0) CHECK(ops.A.entry(i, i - 1) == doctest::Approx(-1.0 / h).epsilon(1e-15));
    if (i < 2) CHECK(ops.A.entry(i, i + 1) == doctest::Approx(-1.0 / h).epsilon(1e-15));
  }
  CHECK(ops.coords[0].x == doctest::Approx(h));
  CHECK(ops.coords[2].x == doctest::Approx(3 * h));
}

TEST_CASE("2d all-dirichlet interior row is the 5-point stencil") {
  const auto ops = build_mesh_and_operators(dirichlet_2d(4, 4), 0.0);
  REQUIRE(ops.n_free() == 4);
  // area/h^2 = 1 for the uniform grid, so diag 4 and four -1 couplings
  for (int d = 0; d < 4; ++d) CHECK(ops.A.entry(d, d) == doctest::Approx(4.0));
  CHECK(ops.A.entry(0, 1) == doctest::Approx(-1.0));
  CHECK(ops.A.entry(0, 2) == doctest::Approx(-1.0));
  CHECK(ops.A.entry(0, 3) == doctest::Approx(0.0));  // diagonal neighbor not coupled
}

TEST_CASE("2d corners: dirichlet wins over neumann") {
  MeshSpec spec = dirichlet_2d(5, 4);
  spec.boundary[Face::Right] = BoundaryKind::Neumann;
  spec.boundary[Face::Bottom] = BoundaryKind::Neumann;
  spec.boundary[Face::Top] = BoundaryKind::Neumann;
  const auto ops = build_mesh_and_operators(spec, 0.0);
  // only the left column is eliminated, including both of its corners
  CHECK(ops.n_free() == 4 * 4);
  for (const auto& gi : ops.grid_index) CHECK(gi.i > 0);
}

TEST_CASE("degenerate specs are rejected") {
  MeshSpec bad = dirichlet_1d(5);
  bad.extent[0] = 0.0;
  CHECK_THROWS_AS(build_mesh_and_operators(bad, 0.0), std::invalid_argument);
  bad = dirichlet_1d(2);
  CHECK_THROWS_AS(build_mesh_and_operators(bad, 0.0), std::invalid_argument);
  MeshSpec untagged = dirichlet_1d(5);
  untagged.boundary.erase(Face::Right);
  CHECK_THROWS_AS(build_mesh_and_operators(untagged, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh_and_operators(dirichlet_1d(5), -1.0), std::invalid_argument);
}

TEST_CASE("coercivity diagnostic") {
  const auto pure_neumann = build_mesh_and_operators(neumann_1d(7), 0.0);
  const Validation bad = validate_problem(pure_neumann);
  CHECK_FALSE(bad.pass);
  CHECK(bad.message.find("assumption (i)") != std::string::npos);

  CHECK(validate_problem(build_mesh_and_operators(neumann_1d(7), 0.5)).pass);
  MeshSpec one_side = neumann_1d(7);
  one_side.boundary[Face::Right] = BoundaryKind::Dirichlet;
  CHECK(validate_problem(build_mesh_and_operators(one_side, 0.0)).pass);
}

TEST_CASE("neumann rows have zero row sums, dirichlet rows do not") {
  const auto ops = build_mesh_and_operators(neumann_1d(9), 0.0);
  for (double s : ops.A.row_sums()) CHECK(std::abs(s) < 1e-13);

  const auto dops = build_mesh_and_operators(dirichlet_1d(9), 0.0);
  const Vec sums = dops.A.row_sums();
  CHECK(sums.front() > 0.0);  // eliminated neighbor leaves excess diagonal
  CHECK(std::abs(sums[3]) < 1e-13);
}

TEST_CASE("solve_spd basics") {
  const auto ops = build_mesh_and_operators(dirichlet_1d(9), 0.3);
  const int n = ops.n_free();

  SUBCASE("zero rhs gives the zero field") {
    const Vec z = solve_spd(ops, SystemMatrix::KSigma, Vec(n, 0.0));
    for (double v : z) CHECK(v == 0.0);
  }
  SUBCASE("B round trip") {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = std::sin(3.0 * i) + 0.2;
    const Vec x = solve_spd(ops, SystemMatrix::B, ops.B.matvec(v));
    for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(v[i]).epsilon(1e-9));
  }
  SUBCASE("deterministic") {
    Vec rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = 0.1 * i - 0.3;
    const Vec a = solve_spd(ops, SystemMatrix::KSigma, rhs);
    const Vec b = solve_spd(ops, SystemMatrix::KSigma, rhs);
    CHECK(a == b);
  }
  SUBCASE("bad tolerance rejected") {
    CHECK_THROWS_AS(solve_spd(ops, SystemMatrix::B, Vec(n, 1.0), 2.0), std::invalid_argument);
  }
  SUBCASE("mismatched length rejected") {
    CHECK_THROWS_AS(solve_spd(ops, SystemMatrix::B, Vec(n + 1, 1.0)), std::invalid_argument);
  }
}

// -z'' = -1, z(0) = z(1) = 0 has the exact solution z = -x(1-x)/2, and the
// 3-point stencil reproduces quadratics exactly.
TEST_CASE("poisson solve is stencil-exact for the quadratic") {
  const auto ops = build_mesh_and_operators(dirichlet_1d(17), 0.0);
  const int n = ops.n_free();
  const Vec z = solve_spd(ops, SystemMatrix::KSigma, load_from_density(ops, Vec(n, -1.0)));
  for (int i = 0; i < n; ++i) {
    const double x = ops.coords[i].x;
    CHECK(z[i] == doctest::Approx(-x * (1.0 - x) / 2.0).epsilon(1e-11));
  }
  const Vec rho = nodal_elliptic_residual(ops, z);
  for (int i = 0; i < n; ++i) CHECK(rho[i] == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("nodal elliptic residual") {
  SUBCASE("zero field") {
    const auto ops = build_mesh_and_operators(dirichlet_1d(9), 0.0);
    for (double v : nodal_elliptic_residual(ops, Vec(ops.n_free(), 0.0))) CHECK(v == 0.0);
  }
  SUBCASE("constants on a pure-neumann mesh see only the mass term") {
    const auto ops = build_mesh_and_operators(neumann_1d(9), 1.0);
    const double c = 0.7;
    for (double v : nodal_elliptic_residual(ops, Vec(ops.n_free(), c)))
      CHECK(v == doctest::Approx(c).epsilon(1e-13));
  }
  SUBCASE("stencil exactness on a quadratic, machine precision") {
    const auto ops = build_mesh_and_operators(dirichlet_1d(33), 0.0);
    Vec q(ops.n_free());
    for (int i = 0; i < ops.n_free(); ++i) {
      const double x = ops.coords[i].x;
      q[i] = x * (1.0 - x);
    }
    for (double v : nodal_elliptic_residual(ops, q))
      CHECK(v == doctest::Approx(2.0).epsilon(1e-13));
  }
}

TEST_CASE("norms") {
  const auto ops = build_mesh_and_operators(dirichlet_1d(9), 0.0);
  const int n = ops.n_free();
  SUBCASE("zero input is zero for all kinds") {
    CHECK(norm_l2(ops, Vec(n, 0.0)) == 0.0);
    CHECK(norm_v(ops, Vec(n, 0.0)) == 0.0);
    CHECK(norm_vstar(ops, Vec(n, 0.0)) == 0.0);
  }
  SUBCASE("dual norm through B is the primal norm of the preimage") {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = std::cos(2.0 * i);
    CHECK(norm_vstar(ops, ops.B.matvec(v)) == doctest::Approx(norm_v(ops, v)).epsilon(1e-9));
  }
  SUBCASE("constant one on a pure-neumann unit interval") {
    const auto nops = build_mesh_and_operators(neumann_1d(21), 0.0);
    CHECK(norm_l2(nops, Vec(nops.n_free(), 1.0)) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(norm_v(nops, Vec(nops.n_free(), 1.0)) == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("duality inequality |F.v| <= ||F||_* ||v||_V") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      Vec f(n), v(n);
      for (int i = 0; i < n; ++i) {
        f[i] = rng.uniform(-1, 1);
        v[i] = rng.uniform(-1, 1);
      }
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += f[i] * v[i];
      CHECK(std::abs(dot) <= norm_vstar(ops, f) * norm_v(ops, v) * (1.0 + 1e-8) + 1e-12);
    }
  }
}

TEST_CASE("pointwise_min lattice laws") {
  CHECK(pointwise_min({1, 2}, {1, 2}) == Vec{1, 2});
  CHECK(pointwise_min({0, 0}, {-1, 5}) == Vec{-1, 0});
  CHECK_THROWS_AS(pointwise_min({1}, {1, 2}), std::invalid_argument);
  SplitMix64 rng(11);
  Vec a(16), b(16);
  for (int i = 0; i < 16; ++i) {
    a[i] = rng.uniform(-2, 2);
    b[i] = rng.uniform(-2, 2);
  }
  CHECK(pointwise_min(a, b) == pointwise_min(b, a));
  CHECK(pointwise_min(a, a) == a);
}

TEST_CASE("operator structure invariants over random meshes") {
  SplitMix64 rng(1234);
  for (int trial = 0; trial < 12; ++trial) {
    MeshSpec spec;
    const bool two_d = trial % 2 == 1;
    spec.dim = two_d ? 2 : 1;
    spec.nodes = {rng.uniform_int(3, 9), rng.uniform_int(3, 7)};
    spec.extent = {rng.uniform(0.4, 2.0), rng.uniform(0.4, 2.0)};
    auto kind = [&] {
      return rng.uniform() < 0.5 ? BoundaryKind::Dirichlet : BoundaryKind::Neumann;
    };
    spec.boundary = {{Face::Left, BoundaryKind::Dirichlet},
                     {Face::Right, kind()},
                     {Face::Bottom, kind()},
                     {Face::Top, kind()}};
    if (!two_d) {
      spec.boundary.erase(Face::Bottom);
      spec.boundary.erase(Face::Top);
    }
    const double sigma = rng.uniform() < 0.5 ? 0.0 : rng.uniform(0.0, 2.0);
    const auto ops = build_mesh_and_operators(spec, sigma);

    CHECK(ops.A.max_asymmetry() == 0.0);  // assembled symmetrically, exact
    CHECK(ops.K.max_asymmetry() == 0.0);
    for (int i = 0; i < ops.n_free(); ++i) {
      CHECK(ops.M[i] > 0.0);
      CHECK(ops.K.diag(i) > 0.0);
      for (int k = ops.K.row_ptr[i]; k < ops.K.row_ptr[i + 1]; ++k)
        if (ops.K.col[k] != i) CHECK(ops.K.val[k] <= 0.0);  // M-matrix off-diagonals
    }
  }
}

TEST_CASE("discrete maximum principle") {
  SplitMix64 rng(77);
  const auto ops = build_mesh_and_operators(dirichlet_2d(6, 5), 0.4);
  for (int trial = 0; trial < 10; ++trial) {
    Vec g(ops.n_free());
    for (double& v : g) v = -rng.uniform();  // g <= 0
    const Vec z = solve_spd(ops, SystemMatrix::KSigma, load_from_density(ops, g));
    for (double v : z) CHECK(v <= 1e-10);
  }
}
