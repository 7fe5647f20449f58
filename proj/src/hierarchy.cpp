#include "toda/hierarchy.hpp"

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

// Structure tolerance for the commutator check: the off-tridiagonal entries
// vanish identically, so anything visibly above rounding is a bug.
constexpr double kStructureTol = 1e-9;

struct RkState {
  std::vector<double> a, b;
};

RkState axpy(const RkState& y, double h, const LaxRhs& k) {
  RkState out = y;
  for (size_t i = 0; i < out.a.size(); ++i) {
    out.a[i] += h * k.da[i];
    out.b[i] += h * k.db[i];
  }
  return out;
}

// Commutator P J - J P over the window `J`, reduced to (da, db) on
// [offset, offset + count). Rows offset-1 .. offset+count are checked for
// tridiagonal symmetric structure; for eventually-free windows the caller
// passes an extended window so that truncation noise stays outside that
// range.
LaxRhs commutator_rhs(const JacobiWindow& J, const HierarchyPolynomial& poly,
                      long offset, long count) {
  const long N = J.sites();
  const Mat P = build_P(J, poly).dense;
  const Mat Jd = dense_matrix(J);
  const Mat C = sub(mul(P, Jd), mul(Jd, P));

  const double tol = kStructureTol * std::max(1.0, max_abs(C));
  const long row_lo = std::max<long>(0, offset - 1);
  const long row_hi = std::min<long>(N - 1, offset + count);
  for (long r = row_lo; r <= row_hi; ++r) {
    for (long c = 0; c < N; ++c) {
      long disp = c - r;
      if (J.boundary == Boundary::Periodic) {
        disp = wrap(disp, N);
        if (disp > N / 2) disp -= N;
      }
      const double v = C(static_cast<int>(r), static_cast<int>(c));
      if ((disp >= 2 || disp <= -2) && std::abs(v) > tol)
        throw structure_error(
            "lax_rhs: commutator has off-tridiagonal content (internal bug), "
            "residual " +
            std::to_string(std::abs(v)));
      if (disp == 1) {
        const double w = C(static_cast<int>(c), static_cast<int>(r));
        if (std::abs(v - w) > tol)
          throw structure_error("lax_rhs: commutator is not symmetric (internal bug)");
      }
    }
  }

  LaxRhs out;
  out.da.resize(static_cast<size_t>(count));
  out.db.resize(static_cast<size_t>(count));
  for (long i = 0; i < count; ++i) {
    const long r = offset + i;
    const long c = (J.boundary == Boundary::Periodic) ? wrap(r + 1, N) : r + 1;
    out.da[static_cast<size_t>(i)] = C(static_cast<int>(r), static_cast<int>(c));
    out.db[static_cast<size_t>(i)] = C(static_cast<int>(r), static_cast<int>(r));
  }
  return out;
}

LaxRhs rhs_of(const Boundary boundary, const RkState& s,
              const HierarchyPolynomial& poly) {
  JacobiWindow Jw(boundary, s.a, s.b);
  return lax_rhs(Jw, poly);
}

RkState rk4_step(Boundary boundary, const RkState& y, double h,
                 const HierarchyPolynomial& poly) {
  const LaxRhs k1 = rhs_of(boundary, y, poly);
  const LaxRhs k2 = rhs_of(boundary, axpy(y, h / 2.0, k1), poly);
  const LaxRhs k3 = rhs_of(boundary, axpy(y, h / 2.0, k2), poly);
  const LaxRhs k4 = rhs_of(boundary, axpy(y, h, k3), poly);
  RkState out = y;
  for (size_t i = 0; i < out.a.size(); ++i) {
    out.a[i] += h / 6.0 * (k1.da[i] + 2.0 * k2.da[i] + 2.0 * k3.da[i] + k4.da[i]);
    out.b[i] += h / 6.0 * (k1.db[i] + 2.0 * k2.db[i] + 2.0 * k3.db[i] + k4.db[i]);
  }
  return out;
}

void check_alive(const RkState& s, long step) {
  for (double v : s.a) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw flow_error("flow breakdown: a_n <= 0 after step " + std::to_string(step));
  }
  for (double v : s.b) {
    if (!std::isfinite(v))
      throw flow_error("flow breakdown: b_n non-finite after step " +
                       std::to_string(step));
  }
}

}  // namespace

HierarchyPolynomial::HierarchyPolynomial(std::vector<double> coeffs)
    : p(std::move(coeffs)) {
  if (p.empty()) throw domain_error("hierarchy polynomial needs degree >= 1");
  if (static_cast<int>(p.size()) > kPowerCap)
    throw cap_error("hierarchy degree exceeds the cap of 16");
  if (p.back() == 0.0)
    throw domain_error("hierarchy polynomial: leading coefficient must be nonzero");
  for (double v : p) {
    if (!std::isfinite(v))
      throw domain_error("hierarchy polynomial: coefficients must be finite");
  }
}

SkewOperator skew_part(const JacobiWindow& J, int j) {
  if (j < 0) throw domain_error("skew_part: j must be nonnegative");
  const int k = j + 1;
  if (k > kPowerCap) throw cap_error("skew_part: power exceeds the cap of 16");

  const long N = J.sites();
  Mat P(static_cast<int>(N), static_cast<int>(N));
  for (long r = 0; r < N; ++r) {
    for (int s = 1; s <= k; ++s) {
      const double v = band_entry(J, k, r, s);
      if (J.boundary == Boundary::Periodic) {
        const long c = wrap(r + s, N);
        P(static_cast<int>(r), static_cast<int>(c)) += v;
        P(static_cast<int>(c), static_cast<int>(r)) -= v;
      } else if (r + s < N) {
        P(static_cast<int>(r), static_cast<int>(r + s)) += v;
        P(static_cast<int>(r + s), static_cast<int>(r)) -= v;
      }
    }
  }
  return SkewOperator{k, J.boundary, std::move(P)};
}

SkewOperator build_P(const JacobiWindow& J, const HierarchyPolynomial& poly) {
  const int d = poly.degree();
  if (d > kPowerCap) throw cap_error("build_P: degree exceeds the cap of 16");
  const int n = J.sites();
  SkewOperator out{d, J.boundary, Mat(n, n)};
  for (int j = 1; j <= d; ++j) {
    const SkewOperator part = skew_part(J, j - 1);
    const double w = poly.p_at(j);
    for (size_t i = 0; i < out.dense.d.size(); ++i)
      out.dense.d[i] += w * part.dense.d[i];
  }
  return out;
}

LaxRhs lax_rhs(const JacobiWindow& J, const HierarchyPolynomial& poly) {
  if (J.boundary == Boundary::Periodic)
    return commutator_rhs(J, poly, 0, J.sites());
  // Extend so that truncation effects stay clear of the window rows.
  const int margin = poly.degree() + 3;
  const JacobiWindow Jx = extend_free(J, margin);
  return commutator_rhs(Jx, poly, margin, J.sites());
}

FlowState evolve(const JacobiWindow& J0, const HierarchyPolynomial& poly,
                 double t_final, double dt) {
  if (!(dt > 0.0)) throw domain_error("evolve: dt must be positive");
  if (t_final == 0.0) return FlowState{J0, 0.0, dt, 0};

  const long steps = std::max<long>(1, std::llround(std::abs(t_final) / dt));
  const double h = t_final / static_cast<double>(steps);

  RkState s{J0.a, J0.b};
  for (long step = 0; step < steps; ++step) {
    try {
      s = rk4_step(J0.boundary, s, h, poly);
    } catch (const domain_error&) {
      throw flow_error("flow breakdown inside step " + std::to_string(step));
    }
    check_alive(s, step);
  }
  return FlowState{JacobiWindow(J0.boundary, std::move(s.a), std::move(s.b)),
                   t_final, h, steps};
}

FlowTrajectory evolve_trajectory(const JacobiWindow& J0,
                                 const HierarchyPolynomial& poly, double t_final,
                                 double dt) {
  if (!(dt > 0.0)) throw domain_error("evolve_trajectory: dt must be positive");

  FlowTrajectory traj{poly, t_final, dt, 0, {}};
  if (t_final == 0.0) {
    traj.states.push_back(J0);
    return traj;
  }

  const long steps = std::max<long>(1, std::llround(std::abs(t_final) / dt));
  const double h = t_final / static_cast<double>(steps);
  traj.dt = h;
  traj.steps = steps;
  traj.states.reserve(static_cast<size_t>(2 * steps + 1));
  traj.states.push_back(J0);

  RkState s{J0.a, J0.b};
  for (long half = 0; half < 2 * steps; ++half) {
    try {
      s = rk4_step(J0.boundary, s, h / 2.0, poly);
    } catch (const domain_error&) {
      throw flow_error("flow breakdown inside half-step " + std::to_string(half));
    }
    check_alive(s, half);
    traj.states.emplace_back(J0.boundary, s.a, s.b);
  }
  return traj;
}

double group_action_check(const JacobiWindow& J0, const HierarchyPolynomial& poly,
                          double s, double t, double dt) {
  const FlowState direct = evolve(J0, poly, s + t, dt);
  const FlowState first = evolve(J0, poly, t, dt);
  const FlowState second = evolve(first.J, poly, s, dt);
  double m = 0.0;
  for (size_t i = 0; i < direct.J.a.size(); ++i) {
    m = std::max(m, std::abs(direct.J.a[i] - second.J.a[i]));
    m = std::max(m, std::abs(direct.J.b[i] - second.J.b[i]));
  }
  return m;
}

}  // namespace toda
