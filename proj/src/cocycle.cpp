#include "toda/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "toda/errors.hpp"

namespace toda {

namespace {

long wrap(long i, long n) {
  long r = i % n;
  return r < 0 ? r + n : r;
}

// Index of site n in the rhs arrays produced by lax_rhs.
size_t rhs_index(const JacobiWindow& J, long n) {
  const long N = J.sites();
  if (J.boundary == Boundary::Periodic) return static_cast<size_t>(wrap(n, N));
  if (n < 0 || n >= N)
    throw domain_error("site outside the window of an eventually-free operator");
  return static_cast<size_t>(n);
}

CMat2 rk4_transfer_step(const CMat2& T, const CMat2& B0, const CMat2& B1,
                        const CMat2& B2, double h) {
  const CMat2 k1 = mul(B0, T);
  const CMat2 k2 = mul(B1, add(T, scale(h / 2.0, k1)));
  const CMat2 k3 = mul(B1, add(T, scale(h / 2.0, k2)));
  const CMat2 k4 = mul(B2, add(T, scale(h, k3)));
  return add(T, scale(h / 6.0,
                      add(add(k1, scale(2.0, k2)), add(scale(2.0, k3), k4))));
}

TransferState evolve_T_impl(const FlowTrajectory& traj,
                            const HierarchyPolynomial& poly_b, cplx z, long site) {
  CMat2 T = CMat2::identity();
  double drift = 0.0;
  const double h = traj.dt;
  for (long k = 0; k < traj.steps; ++k) {
    const CMat2 B0 = build_B(traj.states[static_cast<size_t>(2 * k)], site, poly_b).eval(z);
    const CMat2 B1 =
        build_B(traj.states[static_cast<size_t>(2 * k + 1)], site, poly_b).eval(z);
    const CMat2 B2 =
        build_B(traj.states[static_cast<size_t>(2 * k + 2)], site, poly_b).eval(z);
    T = rk4_transfer_step(T, B0, B1, B2, h);
    drift = std::max(drift, std::abs(T.det() - cplx(1.0)));
    if (drift > kDetDriftLimit)
      throw integrity_error("evolve_T: det T drifted to |det-1| = " +
                            std::to_string(drift));
  }
  return TransferState{T, z, traj.t_final, drift};
}

double zero_curvature_impl(const JacobiWindow& J, long n,
                           const HierarchyPolynomial& poly_flow,
                           const HierarchyPolynomial& poly_b, cplx z, double dt) {
  const FlowState plus = evolve(J, poly_flow, dt, dt);
  const FlowState minus = evolve(J, poly_flow, -dt, dt);
  const CMat2 Mp = transfer_matrix(plus.J, n, z).T;
  const CMat2 Mm = transfer_matrix(minus.J, n, z).T;
  const CMat2 lhs = scale(cplx(1.0 / (2.0 * dt)), sub(Mp, Mm));

  const CMat2 M0 = transfer_matrix(J, n, z).T;
  const CMat2 Bs = build_B(J, n + 1, poly_b).eval(z);
  const CMat2 B0 = build_B(J, n, poly_b).eval(z);
  const CMat2 rhs = sub(mul(Bs, M0), mul(M0, B0));
  return max_abs_diff(lhs, rhs);
}

std::array<double, 3> master_impl(const JacobiWindow& J, long n,
                                  const HierarchyPolynomial& poly_flow,
                                  const HierarchyPolynomial& poly_b) {
  const PolyMatrix2 Bn = build_B(J, n, poly_b);
  const PolyMatrix2 Bs = build_B(J, n + 1, poly_b);  // entries of B(SJ) at n

  const LaxRhs rhs = lax_rhs(J, poly_flow);
  const size_t idx = rhs_index(J, n);
  const double da = rhs.da[idx];
  const double db = rhs.db[idx];
  const double an = J.a_at(n);
  const double bn = J.b_at(n);

  const Polynomial zmb({cplx(-bn), cplx(1.0)});

  // D(z,SJ) = -a_n^2 C(z,J)
  const double r1 = max_abs_coeff(Bs.a21 + Bn.a12.scaled(an * an));

  // A(z,SJ) + A(z,J) = -a_n'/a_n + (z-b_n) C(z,J)
  const Polynomial rhs2 = Polynomial::constant(cplx(-da / an)) + zmb * Bn.a12;
  const double r2 = max_abs_coeff(Bs.a11 + Bn.a11 - rhs2);

  // (z-b_n)/a_n [A(z,SJ) - A(z,J)]
  //   = (-b_n' a_n - (z-b_n) a_n')/a_n^2 + a_n C(z,SJ) + D(z,J)/a_n
  const Polynomial lhs3 = (zmb * (Bs.a11 - Bn.a11)).scaled(cplx(1.0 / an));
  const Polynomial rhs3 =
      Polynomial({cplx((-db * an + bn * da) / (an * an)), cplx(-da / (an * an))}) +
      Bs.a12.scaled(cplx(an)) + Bn.a21.scaled(cplx(1.0 / an));
  const double r3 = max_abs_coeff(lhs3 - rhs3);

  return {r1, r2, r3};
}

// || T(s+t,J0) - T(s, t*J0) T(t, J0) ||.
CocycleCheck cocycle_residual(const JacobiWindow& J0,
                              const HierarchyPolynomial& poly_flow,
                              const HierarchyPolynomial& poly_b, cplx z, double s,
                              double t, double dt, long site) {
  const FlowTrajectory full = evolve_trajectory(J0, poly_flow, s + t, dt);
  const FlowTrajectory first = evolve_trajectory(J0, poly_flow, t, dt);
  const FlowTrajectory second =
      evolve_trajectory(first.final_state(), poly_flow, s, dt);
  const TransferState Tfull = evolve_T_impl(full, poly_b, z, site);
  const TransferState T1 = evolve_T_impl(first, poly_b, z, site);
  const TransferState T2 = evolve_T_impl(second, poly_b, z, site);
  CocycleCheck out;
  out.residual = max_abs_diff(Tfull.T, mul(T2.T, T1.T));
  out.det_drift = std::max({Tfull.det_drift, T1.det_drift, T2.det_drift});
  return out;
}

}  // namespace

TransferState transfer_matrix(const JacobiWindow& J, long n, cplx z) {
  const double an = J.a_at(n);
  const double bn = J.b_at(n);
  CMat2 M{{(z - bn) / an, cplx(1.0 / an), cplx(-an), cplx(0.0)}};
  return TransferState{M, z, 0.0, 0.0};
}

Polynomial g_poly(const JacobiWindow& J, long n, int r) {
  if (r < 1) throw domain_error("g_poly: r must be positive");
  if (r > kPowerCap) throw cap_error("g_poly: degree exceeds the cap of 16");
  std::vector<cplx> c(static_cast<size_t>(r), cplx(0.0));
  for (int j = 0; j <= r - 1; ++j)
    c[static_cast<size_t>(r - 1 - j)] = diag_entry(J, j, n);
  return Polynomial(std::move(c));
}

Polynomial h_poly(const JacobiWindow& J, long n, int r) {
  if (r < 1) throw domain_error("h_poly: r must be positive");
  if (r > kPowerCap) throw cap_error("h_poly: degree exceeds the cap of 16");
  std::vector<cplx> c(static_cast<size_t>(r) + 1, cplx(0.0));
  c[static_cast<size_t>(r)] = 1.0;
  const double an = J.a_at(n);
  for (int j = 1; j <= r - 1; ++j)
    c[static_cast<size_t>(r - 1 - j)] += 2.0 * an * offdiag_entry(J, j, n);
  c[0] -= diag_entry(J, r, n);
  return Polynomial(std::move(c));
}

GHReport gh_sum(const JacobiWindow& J, long n, const HierarchyPolynomial& poly) {
  const int d = poly.degree();
  Polynomial G, H;
  for (int j = 1; j <= d; ++j) {
    G = G + g_poly(J, n, j).scaled(poly.p_at(j));
    H = H + h_poly(J, n, j).scaled(poly.p_at(j));
  }
  return GHReport{G, H};
}

PolyMatrix2 build_B(const JacobiWindow& J, long n, const HierarchyPolynomial& poly) {
  const GHReport gh = gh_sum(J, n, poly);
  const Polynomial zmb({cplx(-J.b_at(n)), cplx(1.0)});
  const Polynomial A = zmb * gh.g.scaled(2.0) - gh.h;
  const Polynomial C = gh.g.scaled(2.0);
  const double a0 = J.a_at(n - 1);
  const Polynomial D = gh_sum(J, n - 1, poly).g.scaled(-2.0 * a0 * a0);
  return PolyMatrix2{A, C, D, A.scaled(-1.0)};
}

HierarchyPolynomial recover_p(const Polynomial& C, const JacobiWindow& J, long n) {
  int top = C.degree();
  while (top >= 0 && C.coeff(top) == cplx(0.0)) --top;
  if (top < 0) throw degenerate_error("recover_p: zero polynomial");
  const int d = top + 1;
  if (d > kPowerCap) throw cap_error("recover_p: degree exceeds the cap of 16");

  std::vector<double> p(static_cast<size_t>(d), 0.0);
  for (int k = d; k >= 1; --k) {
    cplx v = C.coeff(k - 1) / 2.0;
    for (int m = 1; m <= d - k; ++m)
      v -= p[static_cast<size_t>(k + m - 1)] * diag_entry(J, m, n);
    p[static_cast<size_t>(k - 1)] = v.real();
  }
  return HierarchyPolynomial(std::move(p));
}

std::vector<double> compute_q(const PolyMatrix2& B, const JacobiWindow& J, long n) {
  const Polynomial& A = B.a11;
  const Polynomial& C = B.a12;
  const int d = A.degree();
  if (d < 1) throw structure_error("compute_q: A must have degree >= 1");

  const double scale = std::max({1.0, max_abs_coeff(A), max_abs_coeff(C)});
  if (max_abs_coeff(B.trace()) > 1e-9 * scale)
    throw structure_error("compute_q: B is not trace-free");
  if (std::abs(C.coeff(d)) > 1e-9 * scale)
    throw structure_error("compute_q: C exceeds degree d - 1");

  const double an = J.a_at(n);
  const double bn = J.b_at(n);
  std::vector<double> q(static_cast<size_t>(d), 0.0);
  for (int k = d; k >= 1; --k) {
    cplx v = -A.coeff(k) + C.coeff(k - 1) - bn * C.coeff(k);
    for (int m = 1; m <= d - k - 1; ++m)
      v -= 2.0 * an * offdiag_entry(J, m, n) * q[static_cast<size_t>(k + m)];
    q[static_cast<size_t>(k - 1)] = v.real();
  }
  return q;
}

std::vector<cplx> default_z_grid() {
  std::vector<cplx> zs;
  const double pi = 3.14159265358979323846;
  for (int k = 0; k < 8; ++k) {
    const double theta = pi * (k + 0.5) / 8.0;
    zs.push_back(3.0 * cplx(std::cos(theta), std::sin(theta)));
  }
  return zs;
}

TransferState evolve_T(const FlowTrajectory& traj, cplx z, long site) {
  return evolve_T_impl(traj, traj.poly, z, site);
}

TransferState evolve_T(const JacobiWindow& J0, const HierarchyPolynomial& poly,
                       cplx z, double t_final, double dt, long site) {
  return evolve_T(evolve_trajectory(J0, poly, t_final, dt), z, site);
}

double check_zero_curvature(const JacobiWindow& J, long n,
                            const HierarchyPolynomial& poly, cplx z, double dt) {
  return zero_curvature_impl(J, n, poly, poly, z, dt);
}

double check_shift_commutation(const JacobiWindow& J,
                               const HierarchyPolynomial& poly, cplx z, double t,
                               double dt, long site) {
  if (J.boundary != Boundary::Periodic)
    throw boundary_error("check_shift_commutation requires a periodic window");
  const FlowTrajectory traj = evolve_trajectory(J, poly, t, dt);
  const FlowTrajectory trajS = evolve_trajectory(shift_left(J), poly, t, dt);
  const CMat2 TJ = evolve_T(traj, z, site).T;
  const CMat2 TS = evolve_T(trajS, z, site).T;
  const CMat2 Mt = transfer_matrix(traj.final_state(), site, z).T;
  const CMat2 M0 = transfer_matrix(J, site, z).T;
  return max_abs_diff(mul(Mt, TJ), mul(TS, M0));
}

CocycleCheck check_cocycle_law(const JacobiWindow& J, const HierarchyPolynomial& poly,
                               cplx z, double s, double t, double dt, long site) {
  return cocycle_residual(J, poly, poly, z, s, t, dt, site);
}

std::array<double, 3> check_master_equations(const JacobiWindow& J, long n,
                                             const HierarchyPolynomial& poly) {
  return master_impl(J, n, poly, poly);
}

double check_vanishing_identity(const JacobiWindow& J, long n,
                                const HierarchyPolynomial& poly) {
  const PolyMatrix2 B = build_B(J, n, poly);
  const std::vector<double> q = compute_q(B, J, n);
  const int d = static_cast<int>(q.size());
  cplx val = B.a11.coeff(0) + J.b_at(n) * B.a12.coeff(0);
  for (int k = 1; k <= d - 1; ++k)
    val += 2.0 * J.a_at(n) * offdiag_entry(J, k, n) * q[static_cast<size_t>(k)];
  for (int k = 1; k <= d; ++k)
    val -= diag_entry(J, k, n) * q[static_cast<size_t>(k - 1)];
  return std::abs(val);
}

EquivalenceReport check_flow_equivalence(const JacobiWindow& J0,
                                         const HierarchyPolynomial& poly, double t,
                                         double dt,
                                         const std::vector<cplx>& z_samples) {
  return check_flow_equivalence(J0, poly, poly, t, dt, z_samples);
}

EquivalenceReport check_flow_equivalence(const JacobiWindow& J0,
                                         const HierarchyPolynomial& poly_flow,
                                         const HierarchyPolynomial& poly_b, double t,
                                         double dt,
                                         const std::vector<cplx>& z_samples) {
  EquivalenceReport R;
  const long N = J0.sites();
  const long site = 0;

  for (long n = 0; n < N; ++n) {
    const auto r = master_impl(J0, n, poly_flow, poly_b);
    R.master = std::max({R.master, r[0], r[1], r[2]});
  }
  for (const cplx& z : z_samples) {
    R.curvature =
        std::max(R.curvature, zero_curvature_impl(J0, site, poly_flow, poly_b, z, 1e-4));
    R.cocycle = std::max(
        R.cocycle,
        cocycle_residual(J0, poly_flow, poly_b, z, t / 2.0, t / 2.0, dt, site).residual);
  }
  R.overall = std::max({R.master, R.curvature, R.cocycle});
  R.pass = R.overall < kTolTwoIntegrations;
  return R;
}

}  // namespace toda
