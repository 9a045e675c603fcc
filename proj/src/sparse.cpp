#include "evi/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace evi {

SparseMatrix SparseMatrix::from_triplets(int n, std::vector<std::tuple<int, int, double>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });

  SparseMatrix m;
  m.n = n;
  m.row_ptr.assign(n + 1, 0);
  for (std::size_t k = 0; k < entries.size();) {
    const int i = std::get<0>(entries[k]);
    const int j = std::get<1>(entries[k]);
    double v = 0.0;
    while (k < entries.size() && std::get<0>(entries[k]) == i && std::get<1>(entries[k]) == j) {
      v += std::get<2>(entries[k]);
      ++k;
    }
    m.col.push_back(j);
    m.val.push_back(v);
    m.row_ptr[i + 1]++;
  }
  for (int i = 0; i < n; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
  return m;
}

void SparseMatrix::matvec(const Vec& x, Vec& y) const {
  y.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
    y[i] = s;
  }
}

Vec SparseMatrix::matvec(const Vec& x) const {
  Vec y;
  matvec(x, y);
  return y;
}

double SparseMatrix::diag(int i) const { return entry(i, i); }

double SparseMatrix::entry(int i, int j) const {
  for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
    if (col[k] == j) return val[k];
  return 0.0;
}

SparseMatrix SparseMatrix::plus_diag(const Vec& d) const {
  std::vector<std::tuple<int, int, double>> tr;
  tr.reserve(val.size() + n);
  for (int i = 0; i < n; ++i)
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) tr.emplace_back(i, col[k], val[k]);
  for (int i = 0; i < n; ++i) tr.emplace_back(i, i, d[i]);
  return from_triplets(n, std::move(tr));
}

double SparseMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
      worst = std::max(worst, std::abs(val[k] - entry(col[k], i)));
  return worst;
}

Vec SparseMatrix::row_sums() const {
  Vec s(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s[i] += val[k];
  return s;
}

std::vector<std::vector<double>> SparseMatrix::dense() const {
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) d[i][col[k]] = val[k];
  return d;
}

namespace {

double masked_dot(const Vec& a, const Vec& b, const std::vector<char>* mask) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!mask || (*mask)[i]) s += a[i] * b[i];
  return s;
}

}  // namespace

CgResult cg_jacobi(const SparseMatrix& A, const Vec* mass, double shift, const Vec& b,
                   double rel_tol, int max_iter, const std::vector<char>* free_mask,
                   const Vec* x0) {
  const int n = A.n;
  CgResult out;
  out.x.assign(n, 0.0);
  if (x0) {
    out.x = *x0;
    if (free_mask)
      for (int i = 0; i < n; ++i)
        if (!(*free_mask)[i]) out.x[i] = 0.0;
  }

  auto apply = [&](const Vec& x, Vec& y) {
    A.matvec(x, y);
    if (shift != 0.0 && mass)
      for (int i = 0; i < n; ++i) y[i] += shift * (*mass)[i] * x[i];
    if (free_mask)
      for (int i = 0; i < n; ++i)
        if (!(*free_mask)[i]) y[i] = 0.0;
  };

  Vec inv_diag(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double d = A.diag(i) + (mass ? shift * (*mass)[i] : 0.0);
    inv_diag[i] = d > 0.0 ? 1.0 / d : 1.0;
  }

  const double b_norm = std::sqrt(masked_dot(b, b, free_mask));
  if (b_norm == 0.0) {
    out.x.assign(n, 0.0);
    out.converged = true;
    return out;
  }

  Vec r(n), z(n), p(n), ap(n);
  apply(out.x, ap);
  for (int i = 0; i < n; ++i) r[i] = b[i] - ap[i];
  if (free_mask)
    for (int i = 0; i < n; ++i)
      if (!(*free_mask)[i]) r[i] = 0.0;

  for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = masked_dot(r, z, free_mask);

  for (int it = 0; it < max_iter; ++it) {
    const double r_norm = std::sqrt(masked_dot(r, r, free_mask));
    out.rel_residual = r_norm / b_norm;
    out.iterations = it;
    if (out.rel_residual <= rel_tol) {
      out.converged = true;
      return out;
    }
    apply(p, ap);
    const double p_ap = masked_dot(p, ap, free_mask);
    if (p_ap <= 0.0) break;  // not positive definite on this subspace
    const double alpha = rz / p_ap;
    for (int i = 0; i < n; ++i) {
      out.x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_new = masked_dot(r, z, free_mask);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  const double r_norm = std::sqrt(masked_dot(r, r, free_mask));
  out.rel_residual = r_norm / b_norm;
  out.converged = out.rel_residual <= rel_tol;
  return out;
}

Vec dense_cholesky_solve(std::vector<std::vector<double>> a, Vec b) {
  const int n = static_cast<int>(b.size());
  // a = L L^T in place (lower triangle)
  for (int j = 0; j < n; ++j) {
    double d = a[j][j];
    for (int k = 0; k < j; ++k) d -= a[j][k] * a[j][k];
    if (d <= 0.0) throw SolveError("dense Cholesky: matrix not positive definite", d, j);
    a[j][j] = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = a[i][j];
      for (int k = 0; k < j; ++k) s -= a[i][k] * a[j][k];
      a[i][j] = s / a[j][j];
    }
  }
  for (int i = 0; i < n; ++i) {  // L y = b
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= a[i][k] * b[k];
    b[i] = s / a[i][i];
  }
  for (int i = n - 1; i >= 0; --i) {  // L^T x = y
    double s = b[i];
    for (int k = i + 1; k < n; ++k) s -= a[k][i] * b[k];
    b[i] = s / a[i][i];
  }
  return b;
}

}  // namespace evi
