#pragma once

#include <array>
#include <complex>
#include <vector>

namespace toda {

using cplx = std::complex<double>;

// Dense row-major real matrix. Small helper, no external BLAS.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<double> d;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), d(static_cast<size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return d[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return d[static_cast<size_t>(i) * cols + j]; }

  static Mat identity(int n);
};

Mat mul(const Mat& A, const Mat& B);
Mat add(const Mat& A, const Mat& B);
Mat sub(const Mat& A, const Mat& B);
Mat transpose(const Mat& A);
Mat scaled(double s, const Mat& A);
double max_abs(const Mat& A);
double max_abs_diff(const Mat& A, const Mat& B);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Mat vectors;                 // matching columns
  double residual = 0.0;       // max entry of |A v - lambda v| over all pairs
};

// Cyclic Jacobi rotations; plenty for the window sizes used here.
SymmetricEigen symmetric_eigen(const Mat& A);

// 2x2 complex matrix, row-major.
struct CMat2 {
  std::array<cplx, 4> m{};

  cplx& at(int i, int j) { return m[static_cast<size_t>(i) * 2 + j]; }
  cplx at(int i, int j) const { return m[static_cast<size_t>(i) * 2 + j]; }
  cplx det() const { return m[0] * m[3] - m[1] * m[2]; }

  static CMat2 identity() { return CMat2{{cplx(1.0), cplx(0.0), cplx(0.0), cplx(1.0)}}; }
};

CMat2 mul(const CMat2& A, const CMat2& B);
CMat2 add(const CMat2& A, const CMat2& B);
CMat2 sub(const CMat2& A, const CMat2& B);
CMat2 scale(cplx s, const CMat2& A);
double max_abs(const CMat2& A);
double max_abs_diff(const CMat2& A, const CMat2& B);

// Conjugation by diag(1, -1): flips the signs of the off-diagonal entries.
CMat2 sigma_conj(const CMat2& A);

}  // namespace toda
