#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <random>

#include "tautrel/integrals.hpp"
#include "tautrel/relcert.hpp"
#include "tautrel/spin3.hpp"
#include "tautrel/strata.hpp"

using namespace tautrel;

TEST_CASE("pairing matrices") {
  const auto m04 = pairing_matrix(0, 4, 1);
  CHECK(m04.rows() == 8);
  CHECK(m04.cols() == 1);
  for (int i = 0; i < 8; ++i) CHECK(m04.at(i, 0) == 1);
  CHECK(exact_rank(m04) == 1);
  CHECK(m04.rows() - exact_rank(m04) == 7);

  const auto m03 = pairing_matrix(0, 3, 0);
  CHECK(m03.rows() == 1);
  CHECK(m03.at(0, 0) == 1);

  // On M_{1,1}: kappa_1 and psi_1 integrate to 1/24 and the loop graph to 1
  // (classes of graphs are pushforwards, not divided by |Aut|).
  const auto m11 = pairing_matrix(1, 1, 1);
  REQUIRE(m11.rows() == 3);
  const auto& b = basis(1, 1, 1);
  for (int i = 0; i < 3; ++i) {
    const bool loop = b[i].graph.num_edges() == 1;
    CHECK(m11.at(i, 0) == (loop ? Rational(1) : Rational(1, 24)));
  }
  // The pairing vector annihilates every relation on M_{1,1}.
  int nonzero = 0;
  for (const auto& [a, d] : ptilde_enumerate(1, 1)) {
    const auto r = relation_class(1, 1, a, d);
    if (d != 1 || r.is_zero()) continue;
    ++nonzero;
    Rational total(0);
    for (const auto& [k, e] : r.terms()) total += e.coeff * m11.at(basis_index(e.graph), 0);
    CHECK(total == 0);
    CHECK(integrate(r) == 0);
  }
  CHECK(nonzero > 0);
}

TEST_CASE("pairing matrix is symmetric under transposition") {
  const auto m = pairing_matrix(0, 6, 1);
  const auto t = pairing_matrix(0, 6, 2);
  CHECK(m.rows() == t.cols());
  for (const auto& [ij, v] : m.entries) CHECK(t.at(ij.second, ij.first) == v);
  CHECK(exact_rank(m) == exact_rank(t));
}

TEST_CASE("pairing tables certify like certify_zero") {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 5}, {1, 2}, {1, 3}})
    for (const auto& [a, d] : ptilde_enumerate(g, n)) {
      const auto r = relation_class(g, n, a, d);
      const auto direct = certify_zero(r, d);
      const auto cached = PairingTable(g, n, d).certify(r);
      CHECK(cached.pairings == direct.pairings);
      CHECK(cached.certified == direct.certified);
    }
  // A class that is not a relation fails at the same basis element.
  const auto x = psi_class(1, 2, 1) * Rational(3) - kappa_class(1, 2, {1});
  const auto direct = certify_zero(x, 1);
  const auto cached = PairingTable(1, 2, 1).certify(x);
  CHECK_FALSE(cached.certified);
  CHECK(cached.first_failure == direct.first_failure);
  CHECK(cached.pairings == direct.pairings);
}

TEST_CASE("exact rank") {
  using M = std::vector<std::vector<Rational>>;
  CHECK(exact_rank(M{}) == 0);
  CHECK(exact_rank(M{{0, 0}, {0, 0}}) == 0);
  M diag(5, std::vector<Rational>(7, Rational(0)));
  for (int i = 0; i < 5; ++i) diag[i][i + 1] = Rational(i + 1, 3);
  CHECK(exact_rank(diag) == 5);
  CHECK(exact_rank(M{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}) == 2);
  CHECK(exact_rank(M{{Rational(1, 2), Rational(1, 3)}, {Rational(3, 2), 1}}) == 1);
  // Rank is invariant under row permutations and agrees with a rank computed
  // from a random integer combination of rows.
  std::mt19937 rng(3);
  M base(6, std::vector<Rational>(6, Rational(0)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 6; ++j) base[i][j] = Rational(static_cast<int>(rng() % 9) - 4, static_cast<int>(rng() % 4) + 1);
  for (auto& r : base) for (auto& x : r) x.canonicalize();
  for (int i = 3; i < 6; ++i)
    for (int j = 0; j < 6; ++j) base[i][j] = base[i - 3][j] * 2 - base[(i - 2) % 3][j];
  const int r = exact_rank(base);
  CHECK(r <= 3);
  for (int k = 0; k < 5; ++k) {
    std::shuffle(base.begin(), base.end(), rng);
    CHECK(exact_rank(base) == r);
  }
}

TEST_CASE("sparse export round trip") {
  const auto m = pairing_matrix(1, 2, 1);
  const std::string text = m.to_sparse_text();
  CHECK(text.rfind(std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n", 0) == 0);
  const auto back = PairingMatrix::parse_sparse(text);
  CHECK(back.entries == m.entries);
  CHECK(back.rows() == m.rows());
  CHECK_THROWS_AS(PairingMatrix::parse_sparse("2 2\n0 5 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(PairingMatrix::parse_sparse("x"), std::invalid_argument);
}

TEST_CASE("batch certification") {
  BatchOptions o;
  o.budget = 2;
  o.extra.emplace_back(0, 4, std::vector<int>{0, 0, 0, 0}, 1);
  int seen = 0;
  o.progress = [&](const BatchEntry&) { ++seen; };
  const auto r = batch_certify(o);
  CHECK(r.ok());
  CHECK_FALSE(r.truncated);
  // (0,3): 1, (0,4): 16, (0,5): 59, (1,1): 2, (1,2): 8, plus the extra.
  CHECK(r.entries.size() == 1 + 16 + 59 + 2 + 8 + 1);
  CHECK(seen == static_cast<int>(r.entries.size()));
  for (const auto& e : r.entries) CHECK(e.line.rfind("CERTIFIED ", 0) == 0);
  CHECK(batch_certify(o).log() == r.log());
  const auto j = nlohmann::json::parse(r.summary_json());
  CHECK(j["ok"] == true);
  CHECK(j["relations"] == r.entries.size());

  BatchOptions capped;
  capped.budget = 2;
  capped.wall_clock_seconds = 0.0;
  const auto c = batch_certify(capped);
  CHECK(c.truncated);
  CHECK(c.ok());
}

TEST_CASE("types within a budget") {
  const auto t = types_within(3);
  CHECK(t == std::vector<std::pair<int, int>>{{0, 3}, {0, 4}, {1, 1}, {0, 5}, {1, 2}, {0, 6}, {1, 3}, {2, 0}});
}
