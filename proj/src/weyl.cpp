#include "toda/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "toda/errors.hpp"

namespace toda {

namespace {

// Rescale a solution pair when it grows; the m-functions only use ratios.
void renorm(cplx& u0, cplx& u1) {
  const double m = std::max(std::abs(u0), std::abs(u1));
  if (m > 1e100) {
    u0 /= m;
    u1 /= m;
  }
}

cplx safe_ratio(cplx num, cplx den, const char* what) {
  if (den == cplx(0.0)) throw pole_error(std::string(what) + ": u_n = 0 at the reference site");
  const cplx r = num / den;
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
    throw pole_error(std::string(what) + ": non-finite value at the reference site");
  return r;
}

}  // namespace

HalfPlanePoint::HalfPlanePoint(cplx zz) : z(zz) {
  if (!(z.imag() > 0.0))
    throw domain_error("spectral parameter must lie in the open upper half-plane");
}

cplx free_w(cplx z) {
  const cplx s = std::sqrt(z * z - 4.0);
  cplx w = (z - s) / 2.0;
  if (std::abs(w) > 1.0) w = (z + s) / 2.0;
  if (!(std::abs(w) < 1.0))
    throw domain_error("free_w: no strictly decaying branch (z too close to [-2,2])");
  return w;
}

cplx free_m(const HalfPlanePoint& z) { return -free_w(z.z); }

MPair m_functions(const JacobiWindow& J, long n, const HalfPlanePoint& zz) {
  if (J.boundary != Boundary::EventuallyFree)
    throw boundary_error("m_functions requires an eventually-free window");
  const long N = J.sites();
  if (n < 0 || n >= N) throw domain_error("m_functions: reference site outside window");

  const cplx z = zz.z;
  const cplx w = free_w(z);

  // u_+ : exactly w^k to the right of the window (scaled); recurse down.
  // a_k u_{k+1} + a_{k-1} u_{k-1} + b_k u_k = z u_k.
  cplx up_hi = w;    // u_{N+1}
  cplx up_lo = 1.0;  // u_N
  for (long k = N; k > n; --k) {
    const cplx prev = ((z - J.b_at(k)) * up_lo - J.a_at(k) * up_hi) / J.a_at(k - 1);
    up_hi = up_lo;
    up_lo = prev;
    renorm(up_lo, up_hi);
  }
  // up_lo = u_n, up_hi = u_{n+1}
  const cplx m_plus = safe_ratio(-up_hi, J.a_at(n) * up_lo, "m_plus");

  // u_- : w^{-k} to the left (scaled so u_{-1} = 1, u_{-2} = w); recurse up.
  cplx um_lo = w;    // u_{k-1}, starts as u_{-2}
  cplx um_hi = 1.0;  // u_k, starts as u_{-1}
  for (long k = -1; k < n + 1; ++k) {
    const cplx next = ((z - J.b_at(k)) * um_hi - J.a_at(k - 1) * um_lo) / J.a_at(k);
    um_lo = um_hi;
    um_hi = next;
    renorm(um_lo, um_hi);
  }
  // um_lo = u_n, um_hi = u_{n+1}
  const cplx m_minus = safe_ratio(um_hi, J.a_at(n) * um_lo, "m_minus");

  return MPair{m_plus, m_minus, z};
}

SpherePoint mobius(const CMat2& T, SpherePoint w) {
  cplx num, den;
  if (w.at_infinity) {
    num = T.at(0, 0);
    den = T.at(1, 0);
  } else {
    num = T.at(0, 0) * w.value + T.at(0, 1);
    den = T.at(1, 0) * w.value + T.at(1, 1);
  }
  if (den == cplx(0.0)) {
    if (num == cplx(0.0))
      throw degenerate_error("mobius: indeterminate 0/0 (singular matrix)");
    return SpherePoint::infinity();
  }
  return SpherePoint{num / den, false};
}

SpherePoint mobius(const CMat2& T, cplx w) { return mobius(T, SpherePoint{w, false}); }

MEvolutionReport check_m_evolution(const JacobiWindow& J0,
                                   const HierarchyPolynomial& poly, double t,
                                   const HalfPlanePoint& z, double dt, long site) {
  if (J0.boundary != Boundary::EventuallyFree)
    throw boundary_error("check_m_evolution requires an eventually-free window");

  const FlowTrajectory traj = evolve_trajectory(J0, poly, t, dt);
  // The cocycle generated by B at site s propagates the solution data
  // (-u_s, a_{s-1} u_{s-1}); the m-functions at reference site n are ratios
  // of that data at s = n + 1.
  const TransferState Ts = evolve_T(traj, z.z, site + 1);
  const JacobiWindow& Jt = traj.final_state();

  const MPair m0 = m_functions(J0, site, z);
  const MPair mt = m_functions(Jt, site, z);

  MEvolutionReport R;
  const SpherePoint pred_plus = mobius(Ts.T, m0.m_plus);
  const SpherePoint pred_minus = mobius(sigma_conj(Ts.T), m0.m_minus);
  const double inf = std::numeric_limits<double>::infinity();
  R.res_plus = pred_plus.at_infinity ? inf : std::abs(mt.m_plus - pred_plus.value);
  R.res_minus = pred_minus.at_infinity ? inf : std::abs(mt.m_minus - pred_minus.value);

  // Herglotz property sampled along the run.
  const size_t last = traj.states.size() - 1;
  for (int q = 0; q <= 4; ++q) {
    const size_t idx = last * static_cast<size_t>(q) / 4;
    const MPair m = m_functions(traj.states[idx], site, z);
    if (!(m.m_plus.imag() > 0.0) || !(m.m_minus.imag() > 0.0)) R.herglotz_ok = false;
  }

  // Deviation of the evolved tails from the free values.
  const long N = Jt.sites();
  double dev = 0.0;
  for (long i : {0L, 1L, N - 2, N - 1}) {
    dev = std::max(dev, std::abs(Jt.a[static_cast<size_t>(i)] - 1.0));
    dev = std::max(dev, std::abs(Jt.b[static_cast<size_t>(i)]));
  }
  R.tail_deviation = dev;
  R.tail_warning = dev > kTailWarnThreshold;
  return R;
}

}  // namespace toda
