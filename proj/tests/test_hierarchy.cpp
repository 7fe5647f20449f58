#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "toda/errors.hpp"
#include "toda/hierarchy.hpp"

using namespace toda;

TEST_CASE("hierarchy polynomial validation") {
  CHECK_THROWS_AS(HierarchyPolynomial({}), domain_error);
  CHECK_THROWS_AS(HierarchyPolynomial({0.5, 0.0}), domain_error);
  CHECK_NOTHROW(HierarchyPolynomial({0.0, 1.0}));
  CHECK(HierarchyPolynomial({0.3, 0.7}).degree() == 2);
}

TEST_CASE("skew part of J itself") {
  JacobiWindow J = random_window(6, Boundary::Periodic, 2);
  SkewOperator P = skew_part(J, 0);
  for (int n = 0; n < 6; ++n) {
    const int m = (n + 1) % 6;
    CHECK(P.dense(n, m) == doctest::Approx(J.a[static_cast<size_t>(n)]));
    CHECK(P.dense(m, n) == doctest::Approx(-J.a[static_cast<size_t>(n)]));
    CHECK(P.dense(n, n) == 0.0);
  }
  // Corner couplings keep the sign of their displacement.
  CHECK(P.dense(5, 0) == doctest::Approx(J.a[5]));
  CHECK(P.dense(0, 5) == doctest::Approx(-J.a[5]));
}

TEST_CASE("skew parts are antisymmetric by construction") {
  for (auto bd : {Boundary::Periodic, Boundary::EventuallyFree}) {
    JacobiWindow J = random_window(7, bd, 5);
    for (int j = 0; j <= 3; ++j) {
      SkewOperator P = skew_part(J, j);
      CHECK(max_abs(add(P.dense, transpose(P.dense))) == 0.0);
    }
  }
  CHECK_THROWS_AS(skew_part(random_window(5, Boundary::Periodic, 1), kPowerCap),
                  cap_error);
}

TEST_CASE("skew part of the squared free operator") {
  JacobiWindow J = free_window(8, Boundary::EventuallyFree);
  SkewOperator P = skew_part(J, 1);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      const int d = c - r;
      if (d == 2)
        CHECK(P.dense(r, c) == doctest::Approx(1.0));
      else if (d == -2)
        CHECK(P.dense(r, c) == doctest::Approx(-1.0));
      else
        CHECK(std::abs(P.dense(r, c)) < 1e-14);
    }
}

TEST_CASE("build_P: lowest member and weighted sums") {
  JacobiWindow J = random_window(6, Boundary::Periodic, 8);
  CHECK(max_abs_diff(build_P(J, HierarchyPolynomial({1.0})).dense,
                     skew_part(J, 0).dense) == 0.0);

  HierarchyPolynomial p2({0.4, -0.9});
  Mat want = add(scaled(0.4, skew_part(J, 0).dense), scaled(-0.9, skew_part(J, 1).dense));
  CHECK(max_abs_diff(build_P(J, p2).dense, want) < 1e-15);
  CHECK(max_abs(add(build_P(J, p2).dense, transpose(build_P(J, p2).dense))) == 0.0);
}

TEST_CASE("lax_rhs: the free operator is a fixed point") {
  for (auto bd : {Boundary::Periodic, Boundary::EventuallyFree}) {
    JacobiWindow J = free_window(6, bd);
    for (int d = 1; d <= 3; ++d) {
      std::vector<double> p(static_cast<size_t>(d), 0.0);
      p.back() = 1.0;
      LaxRhs r = lax_rhs(J, HierarchyPolynomial(p));
      for (double v : r.da) CHECK(v == 0.0);
      for (double v : r.db) CHECK(v == 0.0);
    }
  }
}

TEST_CASE("lax_rhs: lowest flow in closed form") {
  JacobiWindow J = random_window(5, Boundary::Periodic, 7);
  LaxRhs r = lax_rhs(J, HierarchyPolynomial({1.0}));
  LaxRhs o = oracle::lax_rhs(J, HierarchyPolynomial({1.0}));
  for (long n = 0; n < 5; ++n) {
    const double da = J.a_at(n) * (J.b_at(n + 1) - J.b_at(n));
    const double db = 2.0 * (J.a_at(n) * J.a_at(n) - J.a_at(n - 1) * J.a_at(n - 1));
    CHECK(r.da[static_cast<size_t>(n)] == doctest::Approx(da).epsilon(1e-12));
    CHECK(r.db[static_cast<size_t>(n)] == doctest::Approx(db).epsilon(1e-12));
    CHECK(std::abs(r.da[static_cast<size_t>(n)] - o.da[static_cast<size_t>(n)]) < 1e-13);
    CHECK(std::abs(r.db[static_cast<size_t>(n)] - o.db[static_cast<size_t>(n)]) < 1e-13);
  }
}

TEST_CASE("lax_rhs matches the dense commutator oracle") {
  for (auto bd : {Boundary::Periodic, Boundary::EventuallyFree}) {
    JacobiWindow J = random_window(6, bd, 12);
    for (const auto& pv :
         {std::vector<double>{1.0}, std::vector<double>{0.4, 1.0},
          std::vector<double>{0.3, -0.2, 0.8}}) {
      HierarchyPolynomial poly(pv);
      LaxRhs r = lax_rhs(J, poly);
      LaxRhs o = oracle::lax_rhs(J, poly);
      for (size_t i = 0; i < r.da.size(); ++i) {
        CHECK(std::abs(r.da[i] - o.da[i]) <= 1e-10 * std::max(1.0, std::abs(o.da[i])));
        CHECK(std::abs(r.db[i] - o.db[i]) <= 1e-10 * std::max(1.0, std::abs(o.db[i])));
      }
    }
  }
}

TEST_CASE("evolve: group identity and fixed point") {
  JacobiWindow J = random_window(6, Boundary::Periodic, 21);
  HierarchyPolynomial poly({1.0});
  FlowState s = evolve(J, poly, 0.0, 1e-3);
  CHECK(s.steps == 0);
  CHECK(s.J.a == J.a);
  CHECK(s.J.b == J.b);

  JacobiWindow F = free_window(6, Boundary::Periodic);
  FlowState f = evolve(F, poly, 0.7, 1e-3);
  CHECK(f.J.a == F.a);
  CHECK(f.J.b == F.b);
  CHECK(std::abs(f.t - static_cast<double>(f.steps) * f.dt) < 1e-12);
}

TEST_CASE("evolve preserves the spectrum") {
  JacobiWindow J = random_window(8, Boundary::Periodic, 20240817);
  auto base = spectrum(J).eigenvalues;
  auto evolved = spectrum(evolve(J, HierarchyPolynomial({1.0}), 1.0, 1e-3).J).eigenvalues;
  for (size_t i = 0; i < base.size(); ++i)
    CHECK(std::abs(evolved[i] - base[i]) < 1e-8);

  // Higher hierarchy members are isospectral too.
  for (const auto& pv :
       {std::vector<double>{0.4, 1.0}, std::vector<double>{0.3, -0.2, 0.8}}) {
    auto e = spectrum(evolve(J, HierarchyPolynomial(pv), 0.5, 1e-3).J).eigenvalues;
    for (size_t i = 0; i < base.size(); ++i)
      CHECK(std::abs(e[i] - base[i]) < 1e-8);
  }
}

TEST_CASE("commutator is tridiagonal to rounding") {
  // Off-tridiagonal content of P J - J P vanishes identically; measure the
  // worst dense entry at cyclic displacement >= 2 directly.
  JacobiWindow J = random_window(8, Boundary::Periodic, 57);
  for (const auto& pv : {std::vector<double>{1.0}, std::vector<double>{0.4, 1.0},
                         std::vector<double>{0.3, -0.2, 0.8}}) {
    const Mat P = build_P(J, HierarchyPolynomial(pv)).dense;
    const Mat Jd = dense_matrix(J);
    const Mat C = sub(mul(P, Jd), mul(Jd, P));
    double off = 0.0;
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) {
        int disp = ((c - r) % 8 + 8) % 8;
        if (disp > 4) disp -= 8;
        if (disp >= 2 || disp <= -2) off = std::max(off, std::abs(C(r, c)));
      }
    CHECK(off < 1e-12);
  }
}

TEST_CASE("evolve conserves the first two trace invariants") {
  JacobiWindow J = random_window(7, Boundary::Periodic, 29);
  HierarchyPolynomial poly({0.4, 1.0});
  JacobiWindow K = evolve(J, poly, 0.8, 1e-3).J;
  double s1a = 0, s2a = 0, s1b = 0, s2b = 0;
  for (int i = 0; i < 7; ++i) {
    s1a += J.b[i];
    s2a += J.b[i] * J.b[i] + 2.0 * J.a[i] * J.a[i];
    s1b += K.b[i];
    s2b += K.b[i] * K.b[i] + 2.0 * K.a[i] * K.a[i];
  }
  CHECK(std::abs(s1a - s1b) < 1e-9);
  CHECK(std::abs(s2a - s2b) < 1e-9);
}

TEST_CASE("flow commutes with the lattice shift") {
  JacobiWindow J = random_window(6, Boundary::Periodic, 37);
  HierarchyPolynomial poly({1.0});
  JacobiWindow A = evolve(shift_left(J), poly, 0.4, 1e-3).J;
  JacobiWindow B = shift_left(evolve(J, poly, 0.4, 1e-3).J);
  for (size_t i = 0; i < A.a.size(); ++i) {
    CHECK(std::abs(A.a[i] - B.a[i]) < 1e-9);
    CHECK(std::abs(A.b[i] - B.b[i]) < 1e-9);
  }
}

TEST_CASE("group action property of the flow") {
  JacobiWindow J = random_window(6, Boundary::Periodic, 43);
  HierarchyPolynomial poly({1.0});
  CHECK(group_action_check(J, poly, 0.0, 0.3, 1e-3) == 0.0);
  CHECK(group_action_check(J, poly, 0.25, 0.25, 1e-3) < 1e-7);
  // Inverse flow: evolve forward then backward.
  JacobiWindow back = evolve(evolve(J, poly, 0.3, 1e-3).J, poly, -0.3, 1e-3).J;
  for (size_t i = 0; i < J.a.size(); ++i) {
    CHECK(std::abs(back.a[i] - J.a[i]) < 1e-7);
    CHECK(std::abs(back.b[i] - J.b[i]) < 1e-7);
  }
}

TEST_CASE("flow breakdown raises a typed error") {
  // A wildly oversized step drives the integrator out of the cone a_n > 0.
  JacobiWindow J(Boundary::Periodic, {0.5, 0.5, 0.5, 0.5}, {-1.5, 1.5, -1.5, 1.5});
  HierarchyPolynomial poly({8.0});
  CHECK_THROWS_AS(evolve(J, poly, 200.0, 2.0), flow_error);
}

TEST_CASE("evolve validates the step") {
  JacobiWindow J = random_window(4, Boundary::Periodic, 3);
  CHECK_THROWS_AS(evolve(J, HierarchyPolynomial({1.0}), 1.0, 0.0), domain_error);
  CHECK_THROWS_AS(evolve(J, HierarchyPolynomial({1.0}), 1.0, -1e-3), domain_error);
}

TEST_CASE("trajectories sample the flow at half steps") {
  JacobiWindow J = random_window(5, Boundary::Periodic, 51);
  HierarchyPolynomial poly({1.0});
  FlowTrajectory traj = evolve_trajectory(J, poly, 0.1, 1e-2);
  CHECK(traj.steps == 10);
  CHECK(traj.states.size() == 21);
  // Endpoint agrees with a direct evolve run to integrator accuracy.
  JacobiWindow end = evolve(J, poly, 0.1, 1e-2).J;
  for (size_t i = 0; i < end.a.size(); ++i) {
    CHECK(std::abs(traj.final_state().a[i] - end.a[i]) < 1e-10);
    CHECK(std::abs(traj.final_state().b[i] - end.b[i]) < 1e-10);
  }
}

TEST_CASE("eventually-free evolution freezes only the far tails") {
  JacobiWindow J = free_window(24, Boundary::EventuallyFree);
  J.b[12] = 0.4;
  FlowState s = evolve(J, HierarchyPolynomial({1.0}), 0.3, 1e-3);
  // Tails stay numerically free; the center moves.
  CHECK(std::abs(s.J.b[0]) < 1e-12);
  CHECK(std::abs(s.J.a[0] - 1.0) < 1e-12);
  CHECK(std::abs(s.J.b[23]) < 1e-12);
  CHECK(std::abs(s.J.b[12] - 0.4) > 1e-3);
}
