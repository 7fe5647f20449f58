#pragma once

#include <array>
#include <vector>

#include "toda/hierarchy.hpp"
#include "toda/polynomial.hpp"

namespace toda {

// Entries of B(J) as polynomials in z, laid out [[A, C], [D, -A]].
// For B built by build_B: trace identically zero, deg A = d, deg C = d - 1,
// deg D = d - 1.
struct PolyMatrix2 {
  Polynomial a11, a12, a21, a22;

  CMat2 eval(cplx z) const {
    return CMat2{{a11.eval(z), a12.eval(z), a21.eval(z), a22.eval(z)}};
  }
  Polynomial trace() const { return a11 + a22; }
};

struct TransferState {
  CMat2 T = CMat2::identity();
  cplx z;
  double t = 0.0;
  double det_drift = 0.0;  // max |det T - 1| seen along the integration
};

struct GHReport {
  Polynomial g, h;  // deg G = d - 1, deg H = d, both with leading coeff p_d
};

// Residual tolerances: exact polynomial identities, one integration in the
// comparison, two integrations in the comparison.
inline constexpr double kTolExactIdentity = 1e-9;
inline constexpr double kTolOneIntegration = 1e-6;
inline constexpr double kTolTwoIntegrations = 1e-5;

// evolve_T aborts when |det T - 1| exceeds this.
inline constexpr double kDetDriftLimit = 1e-6;

// One-step transfer matrix at site n:
//   [[(z - b_n)/a_n, 1/a_n], [-a_n, 0]].
TransferState transfer_matrix(const JacobiWindow& J, long n, cplx z);

// G^(r) at site n: sum_{j=0..r-1} z^{r-1-j} (J^j)_n, degree r - 1.
Polynomial g_poly(const JacobiWindow& J, long n, int r);

// H^(r) at site n: z^r - (J^r)_n + 2 a_n sum_{j=1..r-1} z^{r-1-j} (L J^j)_n,
// degree r.
Polynomial h_poly(const JacobiWindow& J, long n, int r);

// p-weighted sums G = sum p_j G^(j), H = sum p_j H^(j).
GHReport gh_sum(const JacobiWindow& J, long n, const HierarchyPolynomial& poly);

// B(J) at site n:
//   [[2(z - b_n) G - H, 2 G], [-2 a_{n-1}^2 G(site n-1), -(2(z - b_n) G - H)]].
PolyMatrix2 build_B(const JacobiWindow& J, long n, const HierarchyPolynomial& poly);

// Inverts C = 2 G: descending recursion p_d = C_{d-1}/2,
// p_k = C_{k-1}/2 - sum_{m>=1} p_{k+m} (J^m)_n. Round-trips with build_B.
HierarchyPolynomial recover_p(const Polynomial& C, const JacobiWindow& J, long n);

// q-array from the A and C coefficients of B:
//   q_k = -A_k + C_{k-1} - b_n C_k - 2 a_n sum_{m>=1} (L J^m)_n q_{k+1+m}.
std::vector<double> compute_q(const PolyMatrix2& B, const JacobiWindow& J, long n);

// Default spectral-parameter grid: 8 points on |z| = 3 in the upper
// half-plane, bounded away from the real axis.
std::vector<cplx> default_z_grid();

// Integrates dT/dt = B(t * J) T, T(0) = I, at a fixed z, reading the flow
// from a precomputed trajectory. Throws integrity_error if det T drifts.
TransferState evolve_T(const FlowTrajectory& traj, cplx z, long site);
TransferState evolve_T(const JacobiWindow& J0, const HierarchyPolynomial& poly,
                       cplx z, double t_final, double dt, long site);

// Central finite difference of M(t * J) at t = 0 against B(SJ) M - M B(J).
double check_zero_curvature(const JacobiWindow& J, long n,
                            const HierarchyPolynomial& poly, cplx z, double dt);

// || M(t*J) T(t,J) - T(t,SJ) M(J) || at a fixed z (Periodic only).
double check_shift_commutation(const JacobiWindow& J,
                               const HierarchyPolynomial& poly, cplx z, double t,
                               double dt, long site);

struct CocycleCheck {
  double residual = 0.0;   // || T(s+t,J) - T(s, t*J) T(t,J) ||
  double det_drift = 0.0;  // worst |det T - 1| over the three integrations
};

// Two independent integrations against one long one.
CocycleCheck check_cocycle_law(const JacobiWindow& J, const HierarchyPolynomial& poly,
                               cplx z, double s, double t, double dt, long site);

// Coefficientwise residuals of the three relations tying B at sites n, n+1
// to the flow derivatives a_n', b_n':
//   D(z,SJ) = -a_n^2 C(z,J)
//   A(z,SJ) + A(z,J) = -a_n'/a_n + (z - b_n) C(z,J)
//   (z-b_n)/a_n [A(z,SJ) - A(z,J)]
//       = (-b_n' a_n - (z-b_n) a_n')/a_n^2 + a_n C(z,SJ) + D(z,J)/a_n.
std::array<double, 3> check_master_equations(const JacobiWindow& J, long n,
                                             const HierarchyPolynomial& poly);

// |A_0 + b_n C_0 + 2 a_n sum_{k=1..d-1} (L J^k)_n q_{k+1}
//      - sum_{k=1..d} (J^k)_n q_k|, which vanishes identically.
double check_vanishing_identity(const JacobiWindow& J, long n,
                                const HierarchyPolynomial& poly);

struct EquivalenceReport {
  double master = 0.0;
  double curvature = 0.0;
  double cocycle = 0.0;
  double overall = 0.0;
  bool pass = false;
};

// Capstone check: with one polynomial p driving both the Lax flow and the
// B-matrix, the master-equation, zero-curvature and cocycle residuals must all
// be small simultaneously.
EquivalenceReport check_flow_equivalence(const JacobiWindow& J0,
                                         const HierarchyPolynomial& poly, double t,
                                         double dt, const std::vector<cplx>& z_samples);

// Variant with a separate polynomial on the B side; used as a negative
// control (a misaligned B must make the residuals blow up).
EquivalenceReport check_flow_equivalence(const JacobiWindow& J0,
                                         const HierarchyPolynomial& poly_flow,
                                         const HierarchyPolynomial& poly_b, double t,
                                         double dt, const std::vector<cplx>& z_samples);

}  // namespace toda
