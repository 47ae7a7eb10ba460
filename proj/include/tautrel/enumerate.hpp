#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tautrel/stable_graph.hpp"

namespace tautrel {

/// A stable graph together with its canonical key and |Aut|.
struct GraphClass {
  StableGraph graph;
  std::string key;
  std::uint64_t aut_order = 1;
};

/// One representative per isomorphism class of stable graphs of type (g, n),
/// ordered by canonical key. Throws std::invalid_argument if 2g - 2 + n <= 0.
/// Without max_edges every class is returned (at most 3g - 3 + n edges).
const std::vector<GraphClass>& stable_graph_classes(int g, int n);
std::vector<StableGraph> enumerate_stable_graphs(int g, int n, std::optional<int> max_edges = std::nullopt);

/// The boundary divisors: classes with exactly one edge.
std::vector<StableGraph> one_edge_graphs(int g, int n);

/// The graph with one vertex of genus g and legs 1..n.
StableGraph trivial_graph(int g, int n);

}  // namespace tautrel
