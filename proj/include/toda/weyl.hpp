#pragma once

#include "toda/cocycle.hpp"

namespace toda {

// Spectral parameter constrained to the open upper half-plane.
struct HalfPlanePoint {
  cplx z;
  explicit HalfPlanePoint(cplx zz);
};

// Weyl m-function pair at a reference site: m_+ built from the solution
// decaying at +inf, m_- from the one decaying at -inf. Both are Herglotz
// values (positive imaginary part) for Im z > 0.
struct MPair {
  cplx m_plus;
  cplx m_minus;
  cplx z;
};

// Point on the Riemann sphere; Mobius images may be at infinity.
struct SpherePoint {
  cplx value;
  bool at_infinity = false;

  static SpherePoint infinity() { return SpherePoint{cplx(0.0), true}; }
};

// Root w of w + 1/w = z with |w| < 1 (the branch giving an l^2 solution
// w^n at +inf). The branch is verified per evaluation, not assumed.
cplx free_w(cplx z);

// m_+ of the free operator (a = 1, b = 0): equals -w.
cplx free_m(const HalfPlanePoint& z);

// Builds u_+/- by seeding the exact free decaying solution outside the window
// and running the three-term recursion inward; returns
//   m_+/- = -/+ u_{n+1} / (a_n u_n) at the reference site n.
MPair m_functions(const JacobiWindow& J, long n, const HalfPlanePoint& z);

// Linear fractional action w -> (T11 w + T12) / (T21 w + T22).
SpherePoint mobius(const CMat2& T, SpherePoint w);
SpherePoint mobius(const CMat2& T, cplx w);
inline SpherePoint mobius(const TransferState& T, cplx w) { return mobius(T.T, w); }

inline constexpr double kTolMEvolution = 1e-4;
inline constexpr double kTailWarnThreshold = 1e-8;

struct MEvolutionReport {
  double res_minus = 0.0;
  double res_plus = 0.0;
  double tail_deviation = 0.0;  // worst |a-1|, |b| on the outer sites after the flow
  bool tail_warning = false;    // tail_deviation > kTailWarnThreshold
  bool herglotz_ok = true;      // Im m_+/- > 0 at every sampled time
};

// Evolves J0, computes m_+/-(z, t) directly from the evolved operator, and
// compares against the Mobius images of m_+/-(z, 0) under the cocycle. The
// plain action propagates the (-u_{n+1}, a_n u_n) data, i.e. m_+; the
// diag(1,-1)-conjugated action propagates m_-.
MEvolutionReport check_m_evolution(const JacobiWindow& J0,
                                   const HierarchyPolynomial& poly, double t,
                                   const HalfPlanePoint& z, double dt, long site);

}  // namespace toda
