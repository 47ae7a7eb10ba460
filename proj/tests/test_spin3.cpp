#include <doctest.h>

#include <algorithm>

#include "tautrel/enumerate.hpp"
#include "tautrel/integrals.hpp"
#include "tautrel/spin3.hpp"
#include "tautrel/strata.hpp"
#include "spin3_support.hpp"

using namespace tautrel;
using namespace tautrel::testing;

TEST_CASE("B-series") {
  const auto b0 = b_series(0, 25), b1 = b_series(1, 25);
  CHECK(b0[0] == 1);
  CHECK(b0[1] == -60);
  CHECK(b0[2] == 27720);
  CHECK(b1[0] == 1);
  CHECK(b1[1] == 84);
  CHECK(b1[2] == -32760);
  // m = 3: (6m)!/((2m)!(3m)!) = 18!/(6! 9!), times (19/-17) and (-1)^3.
  CHECK(b1[3] == Rational(19) * (factorial(18) / (factorial(6) * factorial(9))) / Rational(17));
  auto lhs = series_product(b0, at_minus(b1), 25);
  const auto rhs = series_product(at_minus(b0), b1, 25);
  for (int i = 0; i <= 25; ++i) CHECK(lhs[i] + rhs[i] == (i == 0 ? 2 : 0));
}

TEST_CASE("edge factor") {
  const EdgeFactor e(5);
  CHECK(e.coeff(0, 0, 1, 1) == 60);
  CHECK(e.coeff(0, 0, 0, 0) == -84);
  CHECK(e.coeff(0, 0, 1, 0) == 0);
  CHECK(e.coeff(1, 0, 1, 0) == 32760);
  CHECK(e.coeff(0, 1, 0, 1) == 32760);
  CHECK(e.coeff(1, 0, 0, 1) == -27720);
  CHECK(e.coeff(0, 1, 1, 0) == -27720);
  CHECK(e.coeff(1, 0, 0, 0) == 0);
  for (int p = 0; p <= 5; ++p)
    for (int q = 0; p + q <= 5; ++q)
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) {
          CHECK(e.coeff(p, q, s, t) == e.coeff(q, p, t, s));
          // The total zeta parity of a term of degree p + q is p + q.
          if ((s + t) % 2 != (p + q) % 2) CHECK(e.coeff(p, q, s, t) == 0);
        }
}

TEST_CASE("relations on M_{0,4}") {
  CHECK(relation_class(0, 4, {0, 0, 0, 0}, 1) ==
        (kappa_class(0, 4, {1}) - psi_class(0, 4, 1) - psi_class(0, 4, 2) - psi_class(0, 4, 3) - psi_class(0, 4, 4) +
         delta(1, 2) + delta(1, 3) + delta(1, 4)) *
            Rational(60));
  CHECK(relation_class(0, 4, {1, 1, 1, 1}, 1) == expected_04({1, 1, 1, 1}) * Rational(12));
  int listed = 1;
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::vector<int> a{int(mask >> 3 & 1), int(mask >> 2 & 1), int(mask >> 1 & 1), int(mask & 1)};
    const int ys = a[0] + a[1] + a[2] + a[3];
    const TautClass r = relation_class(0, 4, a, 1);
    if (ys == 2) {
      CHECK(r == expected_04(a) * Rational(12));
      ++listed;
    }
    // One or three y's: the parity condition kills degree 1.
    if (ys % 2) CHECK(r.is_zero());
    if (ys < 3) CHECK(certify_zero(r).certified);
  }
  CHECK(listed == 7);
  CHECK(relation_class(0, 4, {0, 0, 0, 1}, 0) == TautClass::unit(0, 4));
  CHECK(relation_class(0, 4, {0, 1, 1, 1}, 0) == TautClass::unit(0, 4));
  CHECK(relation_class(0, 4, {0, 0, 0, 0}, 0).is_zero());
  CHECK(integrate(relation_class(0, 4, {1, 1, 1, 1}, 1)) == 576);
}

TEST_CASE("relation degree and parity") {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {0, 5}, {2, 0}})
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> a;
      for (int i = 0; i < n; ++i) a.push_back(mask >> i & 1);
      for (int d = 0; d <= 3 * g - 3 + n; ++d) {
        const auto r = relation_class(g, n, a, d);
        if (!r.is_zero()) CHECK(r.homogeneous_degree() == d);
      }
    }
  CHECK(relation_class(1, 1, {0}, 0) == TautClass::unit(1, 1));
  CHECK(relation_class(1, 1, {1}, 0).is_zero());
  CHECK_THROWS_AS(relation_class(0, 3, {0, 2, 0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(relation_class(0, 2, {0, 0}, 0), std::invalid_argument);
}

TEST_CASE("ptilde enumeration") {
  const auto p04 = ptilde_enumerate(0, 4);
  auto has = [](const auto& list, std::vector<int> a, int d) {
    return std::find(list.begin(), list.end(), std::pair{a, d}) != list.end();
  };
  CHECK(has(p04, {0, 0, 0, 0}, 1));
  CHECK(has(p04, {0, 0, 1, 1}, 1));
  CHECK_FALSE(has(p04, {1, 1, 1, 1}, 1));
  CHECK_FALSE(has(p04, {0, 0, 0, 1}, 0));
  CHECK(p04.size() == 16);
  CHECK(has(ptilde_enumerate(1, 4), {1, 1, 1, 1}, 2));
  CHECK(has(ptilde_enumerate(2, 3), {1, 1, 1}, 2));
  CHECK(ptilde_enumerate(0, 3) == std::vector<std::pair<std::vector<int>, int>>{{{0, 0, 0}, 0}});
}

TEST_CASE("extended relations") {
  CHECK(extended_relation(0, 4, {3, 0, 0, 0}, {}, 2) == times_psi_at(relation_class(0, 4, {0, 0, 0, 0}, 1), 1, 1));
  CHECK(extended_relation(0, 3, {0, 0, 0}, {1}, 1) == TautClass::unit(0, 3));
  CHECK(extended_relation(0, 4, {0, 0, 0, 0}, {}, 1) == relation_class(0, 4, {0, 0, 0, 0}, 1));
  CHECK_THROWS_AS(extended_relation(0, 4, {2, 0, 0, 0}, {}, 1), std::invalid_argument);
  // sigma = (0) appends a fifth entry 3, that is psi_5 R^1_{0,(0,0,0,0,0)}, then forgets it.
  const auto r = extended_relation(0, 4, {0, 0, 0, 0}, {0}, 2);
  CHECK(r == pushforward_forgetful(times_psi_at(relation_class(0, 5, {0, 0, 0, 0, 0}, 1), 5, 1)));
  CHECK(certify_zero(r).certified);
}

TEST_CASE("relation records") {
  const auto r = relation_class(0, 4, {0, 0, 0, 0}, 1);
  const auto text = relation_record(0, 4, {0, 0, 0, 0}, 1, r);
  CHECK(text.rfind("R g=0 n=4 d=1 A=0,0,0,0\n", 0) == 0);
  CHECK(text.find(r.to_text()) != std::string::npos);
}

TEST_CASE("Witten class") {
  CHECK(witten_class(0, {0, 0, 1}) == TautClass::unit(0, 3));
  CHECK(witten_class(0, {0, 0, 0}).is_zero());
  CHECK(integrate(witten_class(0, {1, 1, 1, 1})) == Rational(1, 3));
  CHECK(witten_class(1, {0}) == TautClass::unit(1, 1) * Rational(2));
  CHECK(witten_class(1, {1}).is_zero());
  CHECK(witten_degree(0, {1, 1, 1, 1}) == 1);
  CHECK_FALSE(witten_degree(1, {1}).has_value());
  WittenCohFT w;
  CHECK(w.evaluate(0, {1, 0, 0}) == TautClass::unit(0, 3));
  const auto rep = check_axioms<Rational>(w, stable_types(3));
  CHECK(rep.ok());
  for (const auto& v : rep.violations) MESSAGE(v);
  MESSAGE("Witten gluing checks certified only: " << rep.certified_only << " of " << rep.checks);
}

namespace {

PhiScalar phi_power(int quarters, const Rational& c = Rational(1)) { return PhiScalar::monomial(quarters, c); }

/// d/dy with phi = y / 3.
PhiScalar d_dy(const PhiScalar& s) {
  PhiScalar out;
  for (int q = -64; q <= 64; ++q) {
    const Rational c = s.coefficient(q);
    if (!is_zero(c)) out.add_term(q - 4, c * Rational(q) / 12);
  }
  return out;
}

}  // namespace

TEST_CASE("A_2 Frobenius data") {
  const A2Data a2 = a2_frobenius();
  CHECK(a2.flat.validate().empty());
  // Third derivatives of x^2 y / 2 + y^4 / 72 at (0, y): F_xxy = 1, F_yyy = y / 3.
  PhiScalar f3[2][2][2];
  f3[0][0][1] = f3[0][1][0] = f3[1][0][0] = PhiScalar(1);
  f3[1][1][1] = phi_power(4);
  const auto ei = a2.flat.eta.inverse();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        PhiScalar c;
        for (int l = 0; l < 2; ++l) c = c + ei(k, l) * f3[i][j][l];
        CHECK(a2.flat.c[i][j][k] == c);
      }
  // Hat frame: every nonzero product is phi^{1/4} times a frame vector.
  CHECK(a2.hat_product[0][0][0] == phi_power(1));
  CHECK(a2.hat_product[0][1][1] == phi_power(1));
  CHECK(a2.hat_product[1][1][0] == phi_power(1));
  CHECK(a2.hat_product[0][0][1].is_zero());
  CHECK(a2.hat_product[1][1][1].is_zero());
  // mu(d_a) = [E, d_a] + (1 - delta / 2) d_a and [E, d_a] = -alpha_a d_a.
  const auto& e = *a2.flat.euler;
  for (int a = 0; a < 2; ++a) CHECK(a2.mu(a, a) == PhiScalar(Rational(1) - e.alpha[a] - e.delta / 2));
  // xi is multiplication by E = 2 phi d_y in the hat frame.
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) CHECK(a2.xi(k, i) == e.beta[1] * a2.hat_product[1][i][k] * a2.frame(1, 1).inverse());
}

TEST_CASE("A_2 R-matrix") {
  const auto closed = a2_rmatrix_closed(8);
  const auto rec = a2_rmatrix_recursion(8);
  // (1 / (1728 phi^{3/2})) (7 / -5) (6! / (3! 2!)) off the diagonal in degree 1.
  CHECK(closed.coeffs[1](0, 1) == phi_power(-6, Rational(1, 1728) * Rational(-7, 5) * 60));
  CHECK(closed.coeffs[1](1, 0) == phi_power(-6, Rational(60) / 1728));
  CHECK(closed.coeffs[1](0, 0).is_zero());
  CHECK(closed.coeffs[2](0, 0) == phi_power(-12, Rational(-32760) / Rational(1728 * 1728)));
  CHECK(rec == closed);
  const A2Data a2 = a2_frobenius();
  CHECK(closed.is_symplectic(a2.flat.eta));
  CHECK(rec.is_symplectic(a2.flat.eta));
  CHECK(to_flat_frame(closed).is_symplectic(a2.flat.eta));
}

TEST_CASE("shifted Witten class on M_{0,3} and M_{0,4}") {
  const auto w = shifted_witten_action(4);
  CHECK(w->evaluate(0, {0, 0, 1}) == PhiTautClass::unit(0, 3));
  CHECK(w->evaluate(0, {1, 1, 1}) == PhiTautClass::unit(0, 3) * phi_power(4));
  CHECK(w->evaluate(0, {0, 0, 0}).is_zero());
  auto lift = [](const TautClass& x, int quarters, const Rational& c) {
    return x.map_coefficients<PhiScalar>([&](const Rational& r) { return phi_power(quarters, r * c); });
  };
  const Rational inv1728(1, 1728);
  // Five cases with phi-powers -2, -1, 0, +1, 0.
  CHECK(w->evaluate(0, {0, 0, 0, 0}) == lift(expected_04({0, 0, 0, 0}), -8, inv1728 * 12));
  CHECK(w->evaluate(0, {0, 0, 0, 1}) == PhiTautClass::unit(0, 4));
  CHECK(w->evaluate(0, {0, 0, 1, 1}) == lift(expected_04({0, 0, 1, 1}), -4, inv1728 * 12));
  CHECK(w->evaluate(0, {0, 1, 1, 1}) == PhiTautClass::unit(0, 4) * phi_power(4));
  CHECK(w->evaluate(0, {1, 1, 1, 1}) == lift(expected_04({1, 1, 1, 1}), 0, inv1728 * 12));
  CHECK(integrate(w->evaluate(0, {1, 1, 1, 1})) == PhiScalar(Rational(1, 3)));
  CHECK(integrate(w->evaluate(0, {0, 0, 0, 0})).is_zero());
}

TEST_CASE("shifted Witten class: action and formula agree") {
  const auto w = shifted_witten_action(4);
  for (const auto& [g, n] : stable_types(3))
    for (const auto& a : sorted_tuples(2, n)) {
      const auto x = w->evaluate(g, a);
      CHECK(x == shifted_witten_formula(g, a));
      // Degree d carries phi^{(3/2)(D - d)}.
      int three_d = g - 1;
      for (int v : a) three_d += v;
      for (const auto& [key, e] : x.terms()) {
        CHECK(e.coeff.is_monomial());
        CHECK(e.coeff.coefficient(2 * three_d - 6 * e.graph.degree()) != 0);
      }
      // The top-degree part is Witten's class when D is integral.
      if (auto d = witten_degree(g, a))
        CHECK(x.part(*d) == witten_class(g, a).map_coefficients<PhiScalar>([](const Rational& r) { return PhiScalar(r); }));
    }
}

TEST_CASE("shifted Witten class: homogeneity and flatness in y") {
  const auto w = shifted_witten_action(5);
  const A2Data a2 = a2_frobenius();
  const auto rep = check_homogeneity(*w, *a2.flat.euler, {{0, 3}, {0, 4}, {1, 1}});
  CHECK(rep.ok());
  CHECK(rep.certified_only == 0);
  for (const auto& v : rep.violations) MESSAGE(v);
  // p_* Omega(..., d_y) = d/dy Omega, coefficientwise in phi = y / 3.
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {0, 4}, {1, 1}})
    for (const auto& a : sorted_tuples(2, n)) {
      auto b = a;
      b.push_back(1);
      CHECK(pushforward_forgetful(w->evaluate(g, b)) == w->evaluate(g, a).map_coefficients<PhiScalar>(d_dy));
    }
}

TEST_CASE("Witten class: axioms and homogeneity") {
  WittenCohFT w;
  const A2Data a2 = a2_frobenius();
  // The unshifted class is homogeneous for E = x d_x + (2/3) y d_y at y = 0.
  EulerData<Rational> e{a2.flat.euler->alpha, {0, 0}, a2.flat.euler->delta};
  const auto rep = check_homogeneity(w, e, stable_types(3));
  CHECK(rep.ok());
  CHECK(rep.certified_only == 0);
}
