#pragma once

#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace evi {

using Vec = std::vector<double>;

// Thrown when an iterative solve exceeds its iteration budget. Carries the
// last residual so callers can report how far the solve got.
struct SolveError : std::runtime_error {
  double residual;
  int iterations;
  SolveError(const std::string& what, double res, int iters)
      : std::runtime_error(what), residual(res), iterations(iters) {}
};

// Compressed sparse row. Columns within a row are sorted; duplicate triplets
// are summed during assembly.
struct SparseMatrix {
  int n = 0;
  std::vector<int> row_ptr;  // size n + 1
  std::vector<int> col;
  std::vector<double> val;

  static SparseMatrix from_triplets(int n, std::vector<std::tuple<int, int, double>> entries);

  void matvec(const Vec& x, Vec& y) const;
  Vec matvec(const Vec& x) const;

  double diag(int i) const;
  double entry(int i, int j) const;  // 0 when the position is not stored

  SparseMatrix plus_diag(const Vec& d) const;

  double max_asymmetry() const;
  Vec row_sums() const;
  std::vector<std::vector<double>> dense() const;
};

struct CgResult {
  Vec x;
  int iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
};

// Jacobi-preconditioned CG for (A + shift * diag(mass)) x = b, optionally
// restricted to a free-node mask (masked entries are pinned to zero). The
// iteration order is fixed, so results are deterministic.
CgResult cg_jacobi(const SparseMatrix& A, const Vec* mass, double shift, const Vec& b,
                   double rel_tol, int max_iter, const std::vector<char>* free_mask = nullptr,
                   const Vec* x0 = nullptr);

// Dense Cholesky solve (no pivoting) for small SPD systems; the brute-force
// obstacle oracle relies on this so it shares no code with the CG path.
Vec dense_cholesky_solve(std::vector<std::vector<double>> a, Vec b);

}  // namespace evi
