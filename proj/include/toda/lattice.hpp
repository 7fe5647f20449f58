#pragma once

#include <cstdint>
#include <vector>

#include "toda/matrix.hpp"

namespace toda {

enum class Boundary { Periodic, EventuallyFree };

// Cap on operator powers (J^k) consumed by the entry computations and the
// hierarchy construction. Desk-scale degrees stay well below it.
inline constexpr int kPowerCap = 16;

// Finite window of Jacobi parameters (a_n > 0 off-diagonal, b_n diagonal)
// together with a boundary model:
//   Periodic       - indices wrap mod N; the dense realization is the cyclic
//                    symmetric N x N matrix (with corner couplings).
//   EventuallyFree - a_n = 1, b_n = 0 at every lattice site outside [0, N).
struct JacobiWindow {
  Boundary boundary = Boundary::Periodic;
  std::vector<double> a, b;

  JacobiWindow(Boundary bd, std::vector<double> a_in, std::vector<double> b_in);

  int sites() const { return static_cast<int>(b.size()); }

  // Boundary-resolved coefficient lookup at an arbitrary lattice index.
  double a_at(long i) const;
  double b_at(long i) const;
};

JacobiWindow free_window(int sites, Boundary bd);

// a in [0.3, 0.7], b in [-0.4, 0.4]: keeps the operator norm below 2.
JacobiWindow random_window(int sites, Boundary bd, std::uint64_t seed);

// Pads an eventually-free window with `margin` free sites on each side.
// The represented infinite operator is unchanged; window site k of the input
// becomes site k + margin of the result.
JacobiWindow extend_free(const JacobiWindow& J, int margin);

// (J u)_n = a_n u_{n+1} + a_{n-1} u_{n-1} + b_n u_n with indices resolved by
// the boundary model; for EventuallyFree, u is treated as supported on the
// window.
std::vector<cplx> apply(const JacobiWindow& J, const std::vector<cplx>& u);

// SJ: every a_n, b_n replaced by a_{n+1}, b_{n+1}. Cyclic under Periodic;
// under EventuallyFree the free tail value enters at the right edge and the
// leftmost entry falls out of the window.
JacobiWindow shift_left(const JacobiWindow& J);
JacobiWindow shift_right(const JacobiWindow& J);

// <delta_n, J^k delta_m>. Periodic windows use the cyclic realization;
// eventually-free windows use the infinite-lattice operator.
double entry(const JacobiWindow& J, int k, long n, long m);
double diag_entry(const JacobiWindow& J, int k, long n);
double offdiag_entry(const JacobiWindow& J, int k, long n);

// Infinite-lattice band value <delta_r, J^k delta_{r+s}> where the lattice is
// never wrapped; for Periodic windows only the coefficients repeat. Used by
// the skew-part construction, which must split by displacement before any
// projection onto the cyclic matrix.
double band_entry(const JacobiWindow& J, int k, long r, int s);

// Dense window realization: cyclic N x N for Periodic, plain tridiagonal
// truncation for EventuallyFree.
Mat dense_matrix(const JacobiWindow& J);

// Gershgorin bound on the operator norm (includes the free tails).
double norm_bound(const JacobiWindow& J);

struct SpectrumReport {
  std::vector<double> eigenvalues;  // ascending
  double residual = 0.0;            // max |Jv - lambda v| over computed pairs
};

// All eigenvalues of the periodic dense realization. EventuallyFree windows
// are rejected: truncated spectra are not flow invariants.
SpectrumReport spectrum(const JacobiWindow& J);

}  // namespace toda
