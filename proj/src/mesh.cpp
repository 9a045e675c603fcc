#include "evi/mesh.hpp"

#include <cmath>
#include <sstream>

namespace evi {

std::string face_name(Face f) {
  switch (f) {
    case Face::Left: return "left";
    case Face::Right: return "right";
    case Face::Bottom: return "bottom";
    case Face::Top: return "top";
  }
  return "?";
}

void MeshSpec::validate() const {
  std::vector<std::string> problems;
  if (dim != 1 && dim != 2) problems.push_back("dim must be 1 or 2");
  for (int a = 0; a < dim; ++a) {
    if (!(extent[a] > 0.0))
      problems.push_back("extent[" + std::to_string(a) + "] must be positive");
    if (nodes[a] < 3)
      problems.push_back("nodes[" + std::to_string(a) + "] must be at least 3");
  }
  const std::vector<Face> needed = dim == 1
                                       ? std::vector<Face>{Face::Left, Face::Right}
                                       : std::vector<Face>{Face::Left, Face::Right,
                                                           Face::Bottom, Face::Top};
  for (Face f : needed)
    if (!boundary.count(f)) problems.push_back("boundary tag missing for face '" + face_name(f) + "'");
  for (const auto& [f, kind] : boundary) {
    (void)kind;
    bool allowed = f == Face::Left || f == Face::Right ||
                   (dim == 2 && (f == Face::Bottom || f == Face::Top));
    if (!allowed) problems.push_back("face '" + face_name(f) + "' not present in dim " +
                                     std::to_string(dim));
  }
  if (!problems.empty()) {
    std::ostringstream oss;
    oss << "invalid mesh spec:";
    for (const auto& p : problems) oss << " [" << p << "]";
    throw std::invalid_argument(oss.str());
  }
}

namespace {

// 1D lumped mass: full cell inside, half cell at the ends.
Vec axis_mass(int n, double h) {
  Vec m(n, h);
  m[0] = m[n - 1] = 0.5 * h;
  return m;
}

// 1D stiffness rows scaled by cell volume; the boundary rows are the ghost
// reflection of the 3-point stencil times the half cell.
std::vector<std::tuple<int, int, double>> axis_stiffness(int n, double h) {
  std::vector<std::tuple<int, int, double>> tr;
  const double w = 1.0 / h;
  tr.emplace_back(0, 0, w);
  tr.emplace_back(0, 1, -w);
  for (int i = 1; i < n - 1; ++i) {
    tr.emplace_back(i, i - 1, -w);
    tr.emplace_back(i, i, 2.0 * w);
    tr.emplace_back(i, i + 1, -w);
  }
  tr.emplace_back(n - 1, n - 2, -w);
  tr.emplace_back(n - 1, n - 1, w);
  return tr;
}

}  // namespace

DiscreteOperators build_mesh_and_operators(const MeshSpec& spec, double sigma) {
  spec.validate();
  if (sigma < 0.0) throw std::invalid_argument("sigma must be nonnegative");

  DiscreteOperators ops;
  ops.spec = spec;
  ops.sigma = sigma;

  const int nx = spec.nodes[0];
  const int ny = spec.dim == 2 ? spec.nodes[1] : 1;
  const int n_total = nx * ny;
  const double hx = spec.spacing(0);
  const double hy = spec.dim == 2 ? spec.spacing(1) : 1.0;

  auto tag = [&](Face f) { return spec.boundary.at(f); };
  auto is_dirichlet = [&](int i, int j) {
    if (i == 0 && tag(Face::Left) == BoundaryKind::Dirichlet) return true;
    if (i == nx - 1 && tag(Face::Right) == BoundaryKind::Dirichlet) return true;
    if (spec.dim == 2) {
      if (j == 0 && tag(Face::Bottom) == BoundaryKind::Dirichlet) return true;
      if (j == ny - 1 && tag(Face::Top) == BoundaryKind::Dirichlet) return true;
    }
    return false;
  };

  std::vector<int> global_to_free(n_total, -1);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int gid = j * nx + i;
      if (is_dirichlet(i, j)) {
        ops.has_dirichlet = true;
        continue;
      }
      global_to_free[gid] = static_cast<int>(ops.free_dofs.size());
      ops.free_dofs.push_back(gid);
      ops.grid_index.push_back({i, j});
      ops.coords.push_back({i * hx, spec.dim == 2 ? j * hy : 0.0});
    }
  const int n = ops.n_free();
  if (n == 0) throw std::invalid_argument("mesh has no free degrees of freedom");

  const Vec mx = axis_mass(nx, hx);
  const Vec my = spec.dim == 2 ? axis_mass(ny, hy) : Vec{1.0};
  const auto sx = axis_stiffness(nx, hx);
  const auto sy = spec.dim == 2 ? axis_stiffness(ny, hy)
                                : std::vector<std::tuple<int, int, double>>{};

  std::vector<std::tuple<int, int, double>> a_tr;
  ops.M.assign(n, 0.0);
  for (int d = 0; d < n; ++d) {
    const auto [i, j] = ops.grid_index[d];
    ops.M[d] = mx[i] * my[spec.dim == 2 ? j : 0];
  }
  // A = Sx (x) My + Mx (x) Sy restricted to free dofs (Dirichlet elimination).
  for (int j = 0; j < ny; ++j)
    for (const auto& [i, ip, v] : sx) {
      const int r = global_to_free[j * nx + i];
      const int c = global_to_free[j * nx + ip];
      if (r >= 0 && c >= 0) a_tr.emplace_back(r, c, v * my[spec.dim == 2 ? j : 0]);
    }
  if (spec.dim == 2)
    for (int i = 0; i < nx; ++i)
      for (const auto& [j, jp, v] : sy) {
        const int r = global_to_free[j * nx + i];
        const int c = global_to_free[jp * nx + i];
        if (r >= 0 && c >= 0) a_tr.emplace_back(r, c, v * mx[i]);
      }

  ops.A = SparseMatrix::from_triplets(n, std::move(a_tr));
  Vec sig_m(n), mass(n);
  for (int i = 0; i < n; ++i) {
    sig_m[i] = sigma * ops.M[i];
    mass[i] = ops.M[i];
  }
  ops.K = ops.A.plus_diag(sig_m);
  ops.B = ops.A.plus_diag(mass);
  return ops;
}

void DiscreteOperators::require_size(const Vec& v, const char* what) const {
  if (static_cast<int>(v.size()) != n_free())
    throw std::invalid_argument(std::string("mismatched mesh: ") + what + " has length " +
                                std::to_string(v.size()) + ", expected " +
                                std::to_string(n_free()));
}

Validation validate_problem(const DiscreteOperators& ops) {
  if (!ops.has_dirichlet && ops.sigma == 0.0)
    return {false,
            "assumption (i) violated: no Dirichlet boundary and sigma = 0, so the operator "
            "K_sigma is singular (constant functions are in its null space)"};
  return {true, "ok"};
}

Vec solve_spd(const DiscreteOperators& ops, SystemMatrix which, const Vec& rhs, double rel_tol,
              double extra_mass) {
  ops.require_size(rhs, "rhs");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("rel_tol must be in (0,1)");
  const SparseMatrix& mat = which == SystemMatrix::KSigma ? ops.K : ops.B;
  const int max_iter = defaults::cg_max_iter_factor * std::max(ops.n_free(), 50);
  CgResult r = cg_jacobi(mat, &ops.M, extra_mass, rhs, rel_tol, max_iter);
  if (!r.converged)
    throw SolveError("CG did not converge: relative residual " + std::to_string(r.rel_residual) +
                         " after " + std::to_string(r.iterations) + " iterations",
                     r.rel_residual, r.iterations);
  return r.x;
}

double norm_l2(const DiscreteOperators& ops, const Vec& field) {
  ops.require_size(field, "field");
  double s = 0.0;
  for (int i = 0; i < ops.n_free(); ++i) s += ops.M[i] * field[i] * field[i];
  return std::sqrt(s);
}

double norm_v(const DiscreteOperators& ops, const Vec& field) {
  ops.require_size(field, "field");
  const Vec bu = ops.B.matvec(field);
  double s = 0.0;
  for (int i = 0; i < ops.n_free(); ++i) s += field[i] * bu[i];
  return std::sqrt(std::max(0.0, s));
}

double norm_vstar(const DiscreteOperators& ops, const Vec& load, double rel_tol) {
  ops.require_size(load, "load");
  const Vec u = solve_spd(ops, SystemMatrix::B, load, rel_tol);
  double s = 0.0;
  for (int i = 0; i < ops.n_free(); ++i) s += load[i] * u[i];
  return std::sqrt(std::max(0.0, s));
}

Vec load_from_density(const DiscreteOperators& ops, const Vec& g) {
  ops.require_size(g, "density");
  Vec f(g.size());
  for (int i = 0; i < ops.n_free(); ++i) f[i] = ops.M[i] * g[i];
  return f;
}

Vec nodal_elliptic_residual(const DiscreteOperators& ops, const Vec& z) {
  ops.require_size(z, "field");
  Vec r = ops.K.matvec(z);
  for (int i = 0; i < ops.n_free(); ++i) r[i] /= ops.M[i];
  return r;
}

Vec pointwise_min(const Vec& a, const Vec& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("pointwise_min: length mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::min(a[i], b[i]);
  return out;
}

}  // namespace evi
