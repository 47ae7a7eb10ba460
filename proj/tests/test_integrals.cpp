#include <doctest.h>

#include <functional>

#include "tautrel/enumerate.hpp"
#include "tautrel/integrals.hpp"
#include "tautrel/strata.hpp"

using namespace tautrel;

namespace {

/// (n-3)! / prod d_i! when the degrees add up, else 0.
Rational genus0_closed_form(const std::vector<int>& d) {
  const int n = static_cast<int>(d.size());
  int sum = 0;
  for (int x : d) sum += x;
  if (sum != n - 3) return 0;
  Rational r = factorial(n - 3);
  for (int x : d) r /= factorial(x);
  return r;
}

void for_each_vector(int n, int max, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> d(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) return f(d);
    for (int x = 0; x <= max; ++x) {
      d[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
}

StableGraph loop_graph() {
  StableGraph g;
  g.add_vertex(0);
  g.add_leg(0, 1);
  g.add_edge(0, 0);
  return g;
}

}  // namespace

TEST_CASE("psi integrals: small values") {
  CHECK(psi_integral(0, {0, 0, 0}) == 1);
  CHECK(psi_integral(0, {1, 0, 0, 0}) == 1);
  CHECK(psi_integral(1, {1}) == Rational(1, 24));
  CHECK(psi_integral(0, {1, 1, 0, 0, 0}) == 2);
  // Degree 3 on a 2-dimensional space.
  CHECK(psi_integral(0, {2, 1, 0, 0, 0}) == 0);
  CHECK(psi_integral(0, {2, 1, 0, 0, 0, 0}) == 3);
  CHECK(psi_integral(1, {1, 1}) == Rational(1, 24));
  CHECK(psi_integral(2, {4}) == Rational(1, 1152));
  CHECK(psi_integral(2, {2, 3}) == Rational(29, 5760));
  CHECK(psi_integral(3, {7}) == Rational(1, 82944));
  CHECK_THROWS_AS(psi_integral(0, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(psi_integral(1, {}), std::invalid_argument);
}

TEST_CASE("genus-0 values match the closed form up to n = 9") {
  for (int n = 3; n <= 9; ++n)
    for_each_vector(n, n - 3, [&](const std::vector<int>& d) { CHECK(psi_integral(0, d) == genus0_closed_form(d)); });
}

TEST_CASE("string and dilaton equations") {
  // <tau_0 prod tau_{d_i}>_g = sum_j <... tau_{d_j - 1} ...>_g
  // <tau_1 prod tau_{d_i}>_g = (2g - 2 + n) <prod tau_{d_i}>_g
  for (int g = 0; g <= 3; ++g)
    for (int n = 1; n <= 4; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      const int dim = 3 * g - 3 + n;
      for_each_vector(n, dim + 1, [&](const std::vector<int>& d) {
        int sum = 0;
        for (int x : d) sum += x;
        if (sum != dim && sum != dim + 1) return;
        std::vector<int> with0 = d;
        with0.push_back(0);
        Rational rhs(0);
        for (int j = 0; j < n; ++j) {
          if (d[j] == 0) continue;
          std::vector<int> e = d;
          --e[j];
          rhs += psi_integral(g, e);
        }
        CHECK(psi_integral(g, with0) == rhs);
        std::vector<int> with1 = d;
        with1.push_back(1);
        CHECK(psi_integral(g, with1) == (2 * g - 2 + n) * psi_integral(g, d));
      });
    }
}

TEST_CASE("kappa integrals") {
  CHECK(vertex_integral(0, {0, 0, 0, 0}, {1}) == 1);
  CHECK(vertex_integral(1, {0}, {1}) == Rational(1, 24));
  CHECK(vertex_integral(0, {0, 0, 0, 0, 0}, {2}) == 1);
  CHECK(vertex_integral(0, {0, 0, 0, 0, 0}, {1, 1}) == 5);
  CHECK(vertex_integral(0, {1, 0, 0, 0, 0}, {1}) == 3);
  // kappa_1 = psi_1 on M_{1,1}.
  CHECK(vertex_integral(1, {1}, {}) == vertex_integral(1, {0}, {1}));
  // kappa_3 on M_2 is the pushforward of psi^4 from M_{2,1}.
  CHECK(vertex_integral(2, {}, {3}) == psi_integral(2, {4}));
}

TEST_CASE("integrate on M_{0,4}") {
  for (int i = 1; i <= 4; ++i) CHECK(integrate(psi_class(0, 4, i)) == 1);
  CHECK(integrate(kappa_class(0, 4, {1})) == 1);
  for (const auto& g : one_edge_graphs(0, 4)) CHECK(integrate(boundary_class(g)) == 1);
  CHECK_THROWS_AS(integrate(TautClass::unit(0, 4)), std::invalid_argument);
  CHECK(integrate(psi_class(0, 5, 1) * Rational(0) + TautClass(0, 5)) == 0);
}

TEST_CASE("integrate of the loop stratum on M_{1,1}") {
  // The basis element is the pushforward xi_* 1, whose integral is that of
  // the point class of M_{0,3}; the boundary divisor itself is half of it.
  CHECK(integrate(boundary_class(loop_graph())) == 1);
}

TEST_CASE("certify_zero") {
  TautClass x = kappa_class(0, 4, {1});
  for (int i = 1; i <= 4; ++i) x -= psi_class(0, 4, i);
  for (const auto& g : one_edge_graphs(0, 4)) x += boundary_class(g);
  auto rep = certify_zero(x);
  CHECK(rep.certified);
  CHECK(rep.pairings.size() == 1);
  CHECK(rep.summary("r") == "CERTIFIED 0 4 1 r");

  auto bad = certify_zero(psi_class(0, 4, 1));
  CHECK_FALSE(bad.certified);
  CHECK(bad.first_failure == 0);
  CHECK(bad.pairings[0] == 1);
  CHECK(bad.summary("p") == "FAILED 0 4 1 p basis=0");

  // Known relation on M_{1,1}: psi_1 = kappa_1 = (1/24) [loop, 1].
  TautClass y = psi_class(1, 1, 1) - boundary_class(loop_graph()) * Rational(1, 24);
  CHECK(certify_zero(y).certified);
  CHECK(certify_zero(psi_class(1, 1, 1) - kappa_class(1, 1, {1})).certified);
}

TEST_CASE("pairing agrees with integrating the product") {
  for (auto [g, n] : {std::pair{0, 5}, {1, 2}, {0, 6}, {1, 3}}) {
    const int dim = 3 * g - 3 + n;
    for (int d = 0; d <= dim; ++d) {
      const auto& A = basis(g, n, d);
      const auto& B = basis(g, n, dim - d);
      for (std::size_t i = 0; i < A.size(); i += 3)
        for (std::size_t j = 0; j < B.size(); j += 2) {
          auto p = product(TautClass::basic(A[i]), TautClass::basic(B[j]));
          CHECK(pair_basic(A[i], B[j]) == integrate(p));
          CHECK(pair_basic(A[i], B[j]) == pair_basic(B[j], A[i]));
        }
    }
  }
}

TEST_CASE("boundary restriction agrees with the product") {
  // Integral of [phi] . psi monomial, once via the product and once by
  // pulling the monomial back to M_phi and integrating factor by factor.
  for (auto [g, n] : {std::pair{0, 5}, {1, 2}, {1, 3}, {2, 1}}) {
    const int dim = 3 * g - 3 + n;
    for (const auto& phi : one_edge_graphs(g, n)) {
      for (const auto& b : basis(g, n, dim - 1)) {
        TautClass x = TautClass::basic(b);
        const Rational direct = integrate(product(x, boundary_class(phi)));
        Rational via(0);
        for (const auto& [k, e] : pullback_boundary(x, phi).terms) {
          Rational v = e.coeff;
          for (const auto& f : e.factors) v *= integrate_basic(f);
          via += v;
        }
        CHECK(direct == via);
      }
    }
  }
}
