#include "toda/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "toda/errors.hpp"

namespace toda {

namespace {

long wrap(long i, long n) {
  long r = i % n;
  return r < 0 ? r + n : r;
}

// One application of J to a real vector supported on [lo, lo + len) of the
// infinite lattice, coefficients resolved through the window's boundary
// model. Entries of the result outside the slab are dropped by the caller's
// choice of slab size.
void apply_infinite(const JacobiWindow& J, long lo, const std::vector<double>& v,
                    std::vector<double>& out) {
  const long len = static_cast<long>(v.size());
  auto at = [&](long idx) -> double {
    return (idx >= 0 && idx < len) ? v[static_cast<size_t>(idx)] : 0.0;
  };
  out.assign(v.size(), 0.0);
  for (long i = 0; i < len; ++i) {
    const long site = lo + i;
    out[static_cast<size_t>(i)] = J.a_at(site) * at(i + 1) +
                                  J.a_at(site - 1) * at(i - 1) +
                                  J.b_at(site) * at(i);
  }
}

// <delta_n, J^k delta_m> on the infinite lattice (no index wrapping).
double infinite_entry(const JacobiWindow& J, int k, long n, long m) {
  const long lo = std::min(n, m) - k - 1;
  const long hi = std::max(n, m) + k + 1;
  std::vector<double> v(static_cast<size_t>(hi - lo + 1), 0.0);
  v[static_cast<size_t>(m - lo)] = 1.0;
  std::vector<double> tmp;
  for (int it = 0; it < k; ++it) {
    apply_infinite(J, lo, v, tmp);
    v.swap(tmp);
  }
  return v[static_cast<size_t>(n - lo)];
}

void check_power(int k) {
  if (k < 0) throw domain_error("operator power must be nonnegative");
  if (k > kPowerCap) throw cap_error("operator power exceeds the cap of 16");
}

}  // namespace

JacobiWindow::JacobiWindow(Boundary bd, std::vector<double> a_in,
                           std::vector<double> b_in)
    : boundary(bd), a(std::move(a_in)), b(std::move(b_in)) {
  if (a.size() != b.size())
    throw dimension_error("JacobiWindow: a and b must have the same length");
  if (sites() < 3) throw domain_error("JacobiWindow: need at least 3 sites");
  for (double v : a) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw domain_error("JacobiWindow: off-diagonal entries must be positive");
  }
  for (double v : b) {
    if (!std::isfinite(v))
      throw domain_error("JacobiWindow: diagonal entries must be finite");
  }
}

double JacobiWindow::a_at(long i) const {
  const long n = sites();
  if (boundary == Boundary::Periodic) return a[static_cast<size_t>(wrap(i, n))];
  return (i >= 0 && i < n) ? a[static_cast<size_t>(i)] : 1.0;
}

double JacobiWindow::b_at(long i) const {
  const long n = sites();
  if (boundary == Boundary::Periodic) return b[static_cast<size_t>(wrap(i, n))];
  return (i >= 0 && i < n) ? b[static_cast<size_t>(i)] : 0.0;
}

JacobiWindow free_window(int sites, Boundary bd) {
  return JacobiWindow(bd, std::vector<double>(static_cast<size_t>(sites), 1.0),
                      std::vector<double>(static_cast<size_t>(sites), 0.0));
}

JacobiWindow random_window(int sites, Boundary bd, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> da(0.3, 0.7);
  std::uniform_real_distribution<double> db(-0.4, 0.4);
  std::vector<double> a(static_cast<size_t>(sites)), b(static_cast<size_t>(sites));
  for (auto& v : a) v = da(rng);
  for (auto& v : b) v = db(rng);
  return JacobiWindow(bd, std::move(a), std::move(b));
}

JacobiWindow extend_free(const JacobiWindow& J, int margin) {
  if (J.boundary != Boundary::EventuallyFree)
    throw boundary_error("extend_free requires an eventually-free window");
  if (margin < 0) throw domain_error("extend_free: margin must be nonnegative");
  const size_t n = J.a.size();
  std::vector<double> a(n + 2 * static_cast<size_t>(margin), 1.0);
  std::vector<double> b(n + 2 * static_cast<size_t>(margin), 0.0);
  std::copy(J.a.begin(), J.a.end(), a.begin() + margin);
  std::copy(J.b.begin(), J.b.end(), b.begin() + margin);
  return JacobiWindow(Boundary::EventuallyFree, std::move(a), std::move(b));
}

std::vector<cplx> apply(const JacobiWindow& J, const std::vector<cplx>& u) {
  const long n = J.sites();
  if (static_cast<long>(u.size()) != n)
    throw dimension_error("apply: vector length differs from window size");
  auto at = [&](long i) -> cplx {
    if (J.boundary == Boundary::Periodic) return u[static_cast<size_t>(wrap(i, n))];
    return (i >= 0 && i < n) ? u[static_cast<size_t>(i)] : cplx(0.0);
  };
  std::vector<cplx> out(u.size());
  for (long i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] =
        J.a_at(i) * at(i + 1) + J.a_at(i - 1) * at(i - 1) + J.b_at(i) * u[static_cast<size_t>(i)];
  return out;
}

JacobiWindow shift_left(const JacobiWindow& J) {
  const long n = J.sites();
  std::vector<double> a(static_cast<size_t>(n)), b(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) {
    a[static_cast<size_t>(i)] = J.a_at(i + 1);
    b[static_cast<size_t>(i)] = J.b_at(i + 1);
  }
  return JacobiWindow(J.boundary, std::move(a), std::move(b));
}

JacobiWindow shift_right(const JacobiWindow& J) {
  const long n = J.sites();
  std::vector<double> a(static_cast<size_t>(n)), b(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) {
    a[static_cast<size_t>(i)] = J.a_at(i - 1);
    b[static_cast<size_t>(i)] = J.b_at(i - 1);
  }
  return JacobiWindow(J.boundary, std::move(a), std::move(b));
}

double entry(const JacobiWindow& J, int k, long n, long m) {
  check_power(k);
  if (J.boundary == Boundary::EventuallyFree) return infinite_entry(J, k, n, m);
  const long N = J.sites();
  std::vector<double> v(static_cast<size_t>(N), 0.0);
  v[static_cast<size_t>(wrap(m, N))] = 1.0;
  std::vector<double> tmp(v.size());
  for (int it = 0; it < k; ++it) {
    for (long i = 0; i < N; ++i)
      tmp[static_cast<size_t>(i)] = J.a_at(i) * v[static_cast<size_t>(wrap(i + 1, N))] +
                                    J.a_at(i - 1) * v[static_cast<size_t>(wrap(i - 1, N))] +
                                    J.b_at(i) * v[static_cast<size_t>(i)];
    v.swap(tmp);
  }
  return v[static_cast<size_t>(wrap(n, N))];
}

double diag_entry(const JacobiWindow& J, int k, long n) { return entry(J, k, n, n); }

double offdiag_entry(const JacobiWindow& J, int k, long n) {
  return entry(J, k, n, n + 1);
}

double band_entry(const JacobiWindow& J, int k, long r, int s) {
  check_power(k);
  if (std::abs(s) > k) return 0.0;
  return infinite_entry(J, k, r, r + s);
}

Mat dense_matrix(const JacobiWindow& J) {
  const int n = J.sites();
  Mat M(n, n);
  for (int i = 0; i < n; ++i) {
    M(i, i) = J.b[static_cast<size_t>(i)];
    if (J.boundary == Boundary::Periodic) {
      const int j = static_cast<int>(wrap(i + 1, n));
      M(i, j) += J.a[static_cast<size_t>(i)];
      M(j, i) += J.a[static_cast<size_t>(i)];
    } else if (i + 1 < n) {
      M(i, i + 1) = J.a[static_cast<size_t>(i)];
      M(i + 1, i) = J.a[static_cast<size_t>(i)];
    }
  }
  return M;
}

double norm_bound(const JacobiWindow& J) {
  double m = 0.0;
  for (long i = -1; i <= J.sites(); ++i)
    m = std::max(m, std::abs(J.b_at(i)) + J.a_at(i) + J.a_at(i - 1));
  return m;
}

SpectrumReport spectrum(const JacobiWindow& J) {
  if (J.boundary != Boundary::Periodic)
    throw boundary_error(
        "spectrum: only the periodic realization has an exact finite spectrum");
  SymmetricEigen eig = symmetric_eigen(dense_matrix(J));
  return SpectrumReport{std::move(eig.values), eig.residual};
}

}  // namespace toda
