#include "evi/oracle.hpp"

#include <algorithm>

namespace evi {

OracleInstance random_oracle_instance(SplitMix64& rng, int max_dofs) {
  OracleInstance inst;
  const bool two_d = rng.uniform() < 0.4;
  MeshSpec spec;
  if (two_d) {
    spec.dim = 2;
    const int nx = rng.uniform_int(3, 5);
    const int max_ny = std::max(3, std::min(5, 2 + max_dofs / std::max(1, nx - 2)));
    const int ny = rng.uniform_int(3, max_ny);
    spec.nodes = {nx, ny};
    spec.extent = {rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)};
    spec.boundary = {{Face::Left, BoundaryKind::Dirichlet},
                     {Face::Right, rng.uniform() < 0.5 ? BoundaryKind::Neumann
                                                       : BoundaryKind::Dirichlet},
                     {Face::Bottom, BoundaryKind::Dirichlet},
                     {Face::Top, BoundaryKind::Dirichlet}};
  } else {
    spec.dim = 1;
    spec.nodes = {rng.uniform_int(5, std::max(5, max_dofs + 2)), 3};
    spec.extent = {rng.uniform(0.5, 2.0), 1.0};
    const bool left_d = rng.uniform() < 0.8;
    spec.boundary = {{Face::Left, left_d ? BoundaryKind::Dirichlet : BoundaryKind::Neumann},
                     {Face::Right, BoundaryKind::Dirichlet}};
  }
  const double sigma = rng.uniform() < 0.5 ? 0.0 : rng.uniform(0.1, 1.0);
  inst.ops = build_mesh_and_operators(spec, sigma);
  while (inst.ops.n_free() > max_dofs) {
    spec.nodes[0] = std::max(3, spec.nodes[0] - 1);
    if (spec.dim == 2) spec.nodes[1] = std::max(3, spec.nodes[1] - 1);
    inst.ops = build_mesh_and_operators(spec, sigma);
  }
  const int n = inst.ops.n_free();
  inst.psi.resize(n);
  inst.g.resize(n);
  for (int i = 0; i < n; ++i) {
    inst.psi[i] = rng.uniform(-0.5, 0.5);
    inst.g[i] = rng.uniform(-2.0, 2.0);
  }
  return inst;
}

}  // namespace evi
