// Brute-force dense reference implementations for the tests. These are kept
// deliberately independent of the library's computation paths: matrices are
// built entrywise, powers by naive dense multiplication, and the skew part by
// a literal triangular split on a linear (never wrapped) slab of the lattice.
#pragma once

#include <vector>

#include "toda/hierarchy.hpp"
#include "toda/lattice.hpp"

namespace oracle {

using DMat = std::vector<std::vector<double>>;

inline DMat zeros(int n) { return DMat(n, std::vector<double>(n, 0.0)); }

inline DMat matmul(const DMat& A, const DMat& B) {
  const int n = static_cast<int>(A.size());
  DMat C = zeros(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += A[i][k] * B[k][j];
      C[i][j] = s;
    }
  return C;
}

// Dense cyclic realization of a periodic window, built entrywise.
inline DMat dense_cyclic(const toda::JacobiWindow& J) {
  const int n = J.sites();
  DMat M = zeros(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      if (i == j) v += J.b[static_cast<size_t>(i)];
      if (j == (i + 1) % n) v += J.a[static_cast<size_t>(i)];
      if (i == (j + 1) % n) v += J.a[static_cast<size_t>(j)];
      M[i][j] = v;
    }
  return M;
}

// Dense tridiagonal slab over lattice sites [lo, lo + n), coefficients read
// through the window's boundary rules.
inline DMat dense_slab(const toda::JacobiWindow& J, long lo, int n) {
  DMat M = zeros(n);
  for (int i = 0; i < n; ++i) {
    M[i][i] = J.b_at(lo + i);
    if (i + 1 < n) {
      M[i][i + 1] = J.a_at(lo + i);
      M[i + 1][i] = J.a_at(lo + i);
    }
  }
  return M;
}

inline DMat power(const DMat& A, int k) {
  const int n = static_cast<int>(A.size());
  DMat P = zeros(n);
  for (int i = 0; i < n; ++i) P[i][i] = 1.0;
  for (int it = 0; it < k; ++it) P = matmul(P, A);
  return P;
}

// <delta_n, J^k delta_m> by naive dense powers.
inline double entry(const toda::JacobiWindow& J, int k, long n, long m) {
  const int N = J.sites();
  if (J.boundary == toda::Boundary::Periodic) {
    const DMat P = power(dense_cyclic(J), k);
    auto wrap = [N](long i) { return static_cast<int>(((i % N) + N) % N); };
    return P[wrap(n)][wrap(m)];
  }
  const long lo = std::min(n, m) - k - 2;
  const int size = static_cast<int>(std::max(n, m) - lo + k + 3);
  const DMat P = power(dense_slab(J, lo, size), k);
  return P[static_cast<int>(n - lo)][static_cast<int>(m - lo)];
}

// Lax right-hand side by a literal triangular split on a linear slab wide
// enough that truncation cannot reach the window rows.
inline toda::LaxRhs lax_rhs(const toda::JacobiWindow& J,
                            const toda::HierarchyPolynomial& poly) {
  const int N = J.sites();
  const int d = poly.degree();
  const int margin = d + 3;
  const int size = N + 2 * margin;
  const DMat Jlin = dense_slab(J, -margin, size);

  DMat P = zeros(size);
  DMat pw = Jlin;
  for (int j = 1; j <= d; ++j) {
    // pw = Jlin^j here
    const double w = poly.p_at(j);
    for (int r = 0; r < size; ++r)
      for (int c = 0; c < size; ++c) {
        if (c > r) P[r][c] += w * pw[r][c];
        if (c < r) P[r][c] -= w * pw[r][c];
      }
    if (j < d) pw = matmul(pw, Jlin);
  }

  const DMat PJ = matmul(P, Jlin);
  const DMat JP = matmul(Jlin, P);
  toda::LaxRhs out;
  out.da.resize(static_cast<size_t>(N));
  out.db.resize(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) {
    const int r = margin + i;
    out.da[static_cast<size_t>(i)] = PJ[r][r + 1] - JP[r][r + 1];
    out.db[static_cast<size_t>(i)] = PJ[r][r] - JP[r][r];
  }
  return out;
}

}  // namespace oracle
