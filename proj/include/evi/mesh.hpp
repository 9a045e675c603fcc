#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "evi/defaults.hpp"
#include "evi/sparse.hpp"

namespace evi {

enum class BoundaryKind { Dirichlet, Neumann };
enum class Face { Left, Right, Bottom, Top };

std::string face_name(Face f);

// Tensor grid over [0,extent[0]] (x [0,extent[1]] in 2D) with one boundary
// tag per face. Corner nodes touching a Dirichlet face are Dirichlet.
struct MeshSpec {
  int dim = 1;
  std::array<double, 2> extent{1.0, 1.0};
  std::array<int, 2> nodes{3, 3};
  std::map<Face, BoundaryKind> boundary;

  void validate() const;  // throws std::invalid_argument listing every problem
  double spacing(int axis) const { return extent[axis] / (nodes[axis] - 1); }
};

struct GridIndex {
  int i = 0;
  int j = 0;
};

struct Coord {
  double x = 0.0;
  double y = 0.0;
};

// Assembled discrete operators on the free (non-Dirichlet) nodes.
//   A: stiffness (gradient part only), 3-point / 5-point stencil scaled by
//      the lumped cell volume; Dirichlet by row/column elimination, Neumann
//      by ghost reflection.
//   M: lumped mass diagonal (boundary cells halved, 2D corners quartered).
//   K = A + sigma*M,  B = A + M.
struct DiscreteOperators {
  MeshSpec spec;
  double sigma = 0.0;
  bool has_dirichlet = false;

  std::vector<int> free_dofs;          // global node ids, ascending
  std::vector<GridIndex> grid_index;   // per free dof
  std::vector<Coord> coords;           // per free dof

  SparseMatrix A;
  Vec M;
  SparseMatrix K;
  SparseMatrix B;

  int n_free() const { return static_cast<int>(free_dofs.size()); }
  void require_size(const Vec& v, const char* what) const;
};

DiscreteOperators build_mesh_and_operators(const MeshSpec& spec, double sigma);

struct Validation {
  bool pass = false;
  std::string message;
};

// Coercivity diagnostic: K is positive definite iff the mesh has a Dirichlet
// node or sigma > 0.
Validation validate_problem(const DiscreteOperators& ops);

enum class SystemMatrix { KSigma, B };

// Solves (K + extra_mass*M) x = rhs or B x = rhs by Jacobi-preconditioned CG.
// Throws SolveError instead of returning a partial answer.
Vec solve_spd(const DiscreteOperators& ops, SystemMatrix which, const Vec& rhs,
              double rel_tol = defaults::cg_rel_tol, double extra_mass = 0.0);

double norm_l2(const DiscreteOperators& ops, const Vec& field);
double norm_v(const DiscreteOperators& ops, const Vec& field);
// Dual norm through B: ||F||_* = sqrt(F . B^{-1} F).
double norm_vstar(const DiscreteOperators& ops, const Vec& load,
                  double rel_tol = defaults::cg_rel_tol);

Vec load_from_density(const DiscreteOperators& ops, const Vec& g);  // M*g
// Nodal values of -lap(z) + sigma*z, i.e. M^{-1} (K z).
Vec nodal_elliptic_residual(const DiscreteOperators& ops, const Vec& z);
Vec pointwise_min(const Vec& a, const Vec& b);

}  // namespace evi
