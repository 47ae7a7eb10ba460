#include <doctest.h>

#include <random>
#include <set>

#include "tautrel/decorated_graph.hpp"
#include "tautrel/enumerate.hpp"
#include "test_support.hpp"

using namespace tautrel;

namespace {

StableGraph one_edge_0_4(int a, int b, int c, int d) {
  StableGraph g;
  g.add_vertex(0);
  g.add_vertex(0);
  g.add_leg(0, a);
  g.add_leg(0, b);
  g.add_leg(1, c);
  g.add_leg(1, d);
  g.add_edge(0, 1);
  return g;
}

StableGraph loop_1_1() {
  StableGraph g;
  g.add_vertex(0);
  g.add_leg(0, 1);
  g.add_edge(0, 0);
  return g;
}

StableGraph banana() {
  StableGraph g;
  g.add_vertex(0);
  g.add_vertex(0);
  for (int i = 0; i < 3; ++i) g.add_edge(0, 1);
  return g;
}

}  // namespace

TEST_CASE("enumeration counts") {
  CHECK(enumerate_stable_graphs(0, 3).size() == 1);
  CHECK(enumerate_stable_graphs(0, 4).size() == 4);
  CHECK(enumerate_stable_graphs(2, 0).size() == 7);
  CHECK(enumerate_stable_graphs(1, 1).size() == 2);
  CHECK(enumerate_stable_graphs(0, 4, 0).size() == 1);
  // Boundary strata of M_{0,5}: 1 + 10 + 15.
  CHECK(enumerate_stable_graphs(0, 5).size() == 26);
  // 1 + 25 + 105 + 105.
  CHECK(enumerate_stable_graphs(0, 6).size() == 236);
  CHECK(enumerate_stable_graphs(3, 0).size() == 42);
  CHECK_THROWS_AS(enumerate_stable_graphs(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_stable_graphs(1, 0), std::invalid_argument);
}

TEST_CASE("one-edge graphs") {
  CHECK(one_edge_graphs(0, 4).size() == 3);
  CHECK(one_edge_graphs(1, 1).size() == 1);
  auto two = one_edge_graphs(2, 0);
  REQUIRE(two.size() == 2);
  std::multiset<int> shapes;
  for (const auto& g : two) shapes.insert(g.num_vertices());
  CHECK(shapes == std::multiset<int>{1, 2});
}

TEST_CASE("automorphism orders") {
  CHECK(canonicalize(one_edge_0_4(1, 2, 3, 4)).aut_order == 1);
  CHECK(canonicalize(loop_1_1()).aut_order == 2);
  CHECK(canonicalize(banana()).aut_order == 12);
  for (const auto& g : {one_edge_0_4(1, 2, 3, 4), loop_1_1(), banana()})
    CHECK(canonicalize(g).aut_order == testing::brute_force_aut_order(DecoratedGraph(g)));
}

TEST_CASE("every enumerated class matches the brute-force automorphism count") {
  for (auto [g, n] : {std::pair{0, 5}, {1, 2}, {2, 0}, {1, 3}, {2, 1}}) {
    for (const auto& c : stable_graph_classes(g, n)) {
      if (c.graph.num_half_edges() > 9) continue;
      CHECK(c.aut_order == testing::brute_force_aut_order(DecoratedGraph(c.graph)));
    }
  }
}

TEST_CASE("decorations break symmetry") {
  DecoratedGraph d(loop_1_1());
  d.psi[1] = 1;  // one half-edge of the loop
  CHECK(canonicalize(d).aut_order == 1);
  d.psi[2] = 1;
  CHECK(canonicalize(d).aut_order == 2);
}

TEST_CASE("contract_edge") {
  auto t = contract_edge(one_edge_0_4(1, 2, 3, 4), 4);
  CHECK(t.num_vertices() == 1);
  CHECK(canonicalize(t).key == canonicalize(trivial_graph(0, 4)).key);

  auto l = contract_edge(loop_1_1(), 1);
  CHECK(l.num_vertices() == 1);
  CHECK(l.vertex_genus(0) == 1);
  CHECK(l.num_legs() == 1);

  auto b = contract_edge(banana(), 0);
  CHECK(b.num_vertices() == 1);
  CHECK(b.vertex_genus(0) == 0);
  CHECK(b.num_edges() == 2);
  CHECK(b.genus() == 2);

  CHECK_THROWS_AS(contract_edge(one_edge_0_4(1, 2, 3, 4), 0), std::invalid_argument);
}

TEST_CASE("contraction preserves genus") {
  for (auto [g, n] : {std::pair{2, 0}, {1, 3}, {0, 6}, {2, 1}}) {
    for (const auto& gr : enumerate_stable_graphs(g, n)) {
      for (const auto& e : gr.edges()) {
        auto c = contract_edge(gr, e.first);
        CHECK(c.genus() == g);
        CHECK_NOTHROW(c.validate());
      }
    }
  }
}

TEST_CASE("canonical keys are invariant under relabelling") {
  std::mt19937 rng(7);
  for (auto [g, n] : {std::pair{0, 6}, {1, 3}, {2, 1}, {3, 0}}) {
    std::set<std::string> keys, shuffled;
    for (const auto& c : stable_graph_classes(g, n)) {
      keys.insert(c.key);
      auto s = testing::shuffle_labels(DecoratedGraph(c.graph), rng);
      shuffled.insert(canonicalize(s).key);
      // Orbit-stabilizer: isomorphisms between two relabellings number |Aut|.
      auto s2 = testing::shuffle_labels(DecoratedGraph(c.graph), rng);
      CHECK(isomorphisms(s.graph, s2.graph).size() == c.aut_order);
    }
    CHECK(keys == shuffled);
    CHECK(keys.size() == stable_graph_classes(g, n).size());
  }
}

TEST_CASE("graph text format round-trips") {
  const std::string text = "G g=0 n=4; V 0 0; E (0:1); L 1->0 2->0 3->1 4->1";
  auto g = StableGraph::parse(text);
  CHECK(g.to_text() == text);
  for (const auto& c : stable_graph_classes(2, 1)) {
    auto back = StableGraph::parse(c.graph.to_text());
    CHECK(canonicalize(back).key == c.key);
    CHECK(back.to_text() == c.graph.to_text());
  }
  CHECK(StableGraph::parse("G g=1 n=1; V 0; E (0:0); L 1->0").h1() == 1);
  CHECK_THROWS_AS(StableGraph::parse("G g=0 n=2; V 0; E ; L 1->0 2->0"), std::invalid_argument);
  CHECK_THROWS_AS(StableGraph::parse("G g=1 n=4; V 0 0; E (0:1); L 1->0 2->0 3->1 4->1"), std::invalid_argument);
}

TEST_CASE("decorated text format round-trips") {
  DecoratedGraph d(one_edge_0_4(1, 3, 2, 4));
  d.psi[4] = 0;
  auto t = DecoratedGraph(StableGraph::parse("G g=1 n=2; V 0 1; E (0:1); L 1->0 2->0"));
  t.kappa[1] = {1};
  t.psi[0] = 0;
  auto back = DecoratedGraph::parse(t.to_text());
  CHECK(back == t);
  auto p = DecoratedGraph::parse("G g=1 n=1; V 1; E ; L 1->0; K v0: 1^1; P h0: 0");
  CHECK(p.kappa[0] == KappaMonomial{1});
}
