#pragma once

#include <vector>

#include "toda/lattice.hpp"

namespace toda {

// Coefficients p_1..p_d of the hierarchy polynomial 1 + p_1 z + ... + p_d z^d.
// The constant coefficient is fixed at 1 and not stored; p_d must be nonzero.
struct HierarchyPolynomial {
  std::vector<double> p;

  explicit HierarchyPolynomial(std::vector<double> coeffs);

  int degree() const { return static_cast<int>(p.size()); }
  double p_at(int j) const { return p[static_cast<size_t>(j) - 1]; }  // 1-based
};

// Antisymmetric band operator over a window, held densely. The transpose
// equals the negation exactly: each band value is written once with both
// signs.
struct SkewOperator {
  int half_bandwidth = 0;
  Boundary boundary = Boundary::Periodic;
  Mat dense;
};

struct FlowState {
  JacobiWindow J;
  double t = 0.0;
  double dt = 0.0;  // signed step actually used; t = steps * dt
  long steps = 0;
};

struct LaxRhs {
  std::vector<double> da, db;
};

inline constexpr double kDefaultDt = 1e-3;

// P~_j: upper minus lower strictly triangular part of J^{j+1}, split by
// lattice displacement (so periodic corner couplings keep the sign of their
// displacement, not of their position in the dense matrix).
SkewOperator skew_part(const JacobiWindow& J, int j);

// P for the hierarchy member of 1 + p_1 z + ... + p_d z^d:
//   P = sum_{j=1..d} p_j P~_{j-1}.
SkewOperator build_P(const JacobiWindow& J, const HierarchyPolynomial& poly);

// Commutator P J - J P, computed densely, checked tridiagonal and symmetric,
// then reduced to the per-site derivatives (da_n, db_n).
LaxRhs lax_rhs(const JacobiWindow& J, const HierarchyPolynomial& poly);

// Fixed-step classical RK4 integration of the Lax flow. t_final may be
// negative. The step actually used is t_final / steps with
// steps = round(|t_final| / dt), so t = steps * dt holds exactly.
FlowState evolve(const JacobiWindow& J0, const HierarchyPolynomial& poly,
                 double t_final, double dt);

// Flow states sampled at half-step resolution, for driving transfer-matrix
// integration at full RK4 order. Computed once, shared read-only.
struct FlowTrajectory {
  HierarchyPolynomial poly;
  double t_final = 0.0;
  double dt = 0.0;  // transfer-matrix step; states are spaced dt/2
  long steps = 0;   // number of dt steps
  std::vector<JacobiWindow> states;  // 2*steps + 1 entries

  const JacobiWindow& initial() const { return states.front(); }
  const JacobiWindow& final_state() const { return states.back(); }
};

FlowTrajectory evolve_trajectory(const JacobiWindow& J0,
                                 const HierarchyPolynomial& poly, double t_final,
                                 double dt);

// Max entrywise difference between evolve(J0, s + t) and
// evolve(evolve(J0, t), s).
double group_action_check(const JacobiWindow& J0, const HierarchyPolynomial& poly,
                          double s, double t, double dt);

}  // namespace toda
