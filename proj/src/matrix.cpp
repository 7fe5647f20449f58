#include "toda/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "toda/errors.hpp"

namespace toda {

Mat Mat::identity(int n) {
  Mat I(n, n);
  for (int i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

Mat mul(const Mat& A, const Mat& B) {
  if (A.cols != B.rows) throw dimension_error("matrix product: inner sizes differ");
  Mat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int k = 0; k < A.cols; ++k) {
      const double aik = A(i, k);
      if (aik == 0.0) continue;  // band matrices dominate here
      for (int j = 0; j < B.cols; ++j) C(i, j) += aik * B(k, j);
    }
  }
  return C;
}

Mat add(const Mat& A, const Mat& B) {
  if (A.rows != B.rows || A.cols != B.cols)
    throw dimension_error("matrix add: shapes differ");
  Mat C(A.rows, A.cols);
  for (size_t i = 0; i < C.d.size(); ++i) C.d[i] = A.d[i] + B.d[i];
  return C;
}

Mat sub(const Mat& A, const Mat& B) {
  if (A.rows != B.rows || A.cols != B.cols)
    throw dimension_error("matrix sub: shapes differ");
  Mat C(A.rows, A.cols);
  for (size_t i = 0; i < C.d.size(); ++i) C.d[i] = A.d[i] - B.d[i];
  return C;
}

Mat transpose(const Mat& A) {
  Mat T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

Mat scaled(double s, const Mat& A) {
  Mat C = A;
  for (auto& v : C.d) v *= s;
  return C;
}

double max_abs(const Mat& A) {
  double m = 0.0;
  for (double v : A.d) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const Mat& A, const Mat& B) { return max_abs(sub(A, B)); }

SymmetricEigen symmetric_eigen(const Mat& A0) {
  if (A0.rows != A0.cols) throw dimension_error("eigensolver needs a square matrix");
  const int n = A0.rows;
  Mat A = A0;
  Mat V = Mat::identity(n);

  const double scale = std::max(1.0, max_abs(A0));
  for (int sweep = 0; sweep < 128; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(A(p, q)));
    if (off <= 1e-15 * scale) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (std::abs(apq) <= 1e-18 * scale) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {  // A <- G^T A G, columns then rows
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return A(i, i) < A(j, j); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = A(order[j], order[j]);
    for (int i = 0; i < n; ++i) out.vectors(i, j) = V(i, order[j]);
  }

  double res = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      double av = 0.0;
      for (int k = 0; k < n; ++k) av += A0(i, k) * out.vectors(k, j);
      res = std::max(res, std::abs(av - out.values[j] * out.vectors(i, j)));
    }
  }
  out.residual = res;
  return out;
}

CMat2 mul(const CMat2& A, const CMat2& B) {
  CMat2 C;
  C.m[0] = A.m[0] * B.m[0] + A.m[1] * B.m[2];
  C.m[1] = A.m[0] * B.m[1] + A.m[1] * B.m[3];
  C.m[2] = A.m[2] * B.m[0] + A.m[3] * B.m[2];
  C.m[3] = A.m[2] * B.m[1] + A.m[3] * B.m[3];
  return C;
}

CMat2 add(const CMat2& A, const CMat2& B) {
  CMat2 C;
  for (int i = 0; i < 4; ++i) C.m[i] = A.m[i] + B.m[i];
  return C;
}

CMat2 sub(const CMat2& A, const CMat2& B) {
  CMat2 C;
  for (int i = 0; i < 4; ++i) C.m[i] = A.m[i] - B.m[i];
  return C;
}

CMat2 scale(cplx s, const CMat2& A) {
  CMat2 C;
  for (int i = 0; i < 4; ++i) C.m[i] = s * A.m[i];
  return C;
}

double max_abs(const CMat2& A) {
  double m = 0.0;
  for (const auto& v : A.m) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const CMat2& A, const CMat2& B) { return max_abs(sub(A, B)); }

CMat2 sigma_conj(const CMat2& A) {
  return CMat2{{A.m[0], -A.m[1], -A.m[2], A.m[3]}};
}

}  // namespace toda
