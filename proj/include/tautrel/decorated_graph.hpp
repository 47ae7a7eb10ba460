#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tautrel/stable_graph.hpp"

namespace tautrel {

/// Sorted multiset of kappa indices, e.g. {1, 1, 2} is kappa_1^2 kappa_2.
using KappaMonomial = std::vector<int>;

int kappa_degree(const KappaMonomial& m);

/// A basic class [Gamma, gamma]: a stable graph with a kappa monomial at each
/// vertex and a psi power at each half-edge (legs included).
struct DecoratedGraph {
  StableGraph graph;
  std::vector<KappaMonomial> kappa;
  std::vector<int> psi;

  DecoratedGraph() = default;
  explicit DecoratedGraph(StableGraph g);

  int vertex_decoration_degree(int v) const;
  /// |E| plus the complex degree of the decoration.
  int degree() const;
  /// Sum of kappa and psi degrees at v is at most 3g(v) - 3 + n(v) everywhere.
  bool within_vertex_bounds() const;

  /// Graph record followed by "; K v<i>: a^x ..." and "; P h<j>: y" segments.
  /// Half-edges are numbered as in StableGraph::normalized().
  std::string to_text() const;
  static DecoratedGraph parse(std::string_view text);

  friend bool operator==(const DecoratedGraph&, const DecoratedGraph&) = default;
};

struct CanonicalForm {
  std::string key;
  std::uint64_t aut_order = 1;
};

struct CanonicalDecorated {
  std::string key;
  std::uint64_t aut_order = 1;
  DecoratedGraph representative;
};

/// Isomorphism-invariant key and |Aut| (automorphisms fix legs pointwise).
CanonicalForm canonicalize(const StableGraph& g);

/// Same for decorated graphs; automorphisms must also preserve decorations.
/// The representative is a fixed relabelling depending only on the class.
CanonicalDecorated canonicalize(const DecoratedGraph& d);

}  // namespace tautrel
