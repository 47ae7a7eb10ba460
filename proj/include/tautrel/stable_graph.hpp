#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tautrel {

/// An edge, given by its two half-edges (first < second).
struct Edge {
  int first;
  int second;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Dual graph of a nodal marked curve: genus-labelled vertices, half-edges
/// with a vertex assignment, and an involution whose 2-cycles are edges and
/// whose fixed points are the legs (each carrying a marking 1..n).
class StableGraph {
 public:
  StableGraph() = default;

  int add_vertex(int genus);
  /// Adds a leg with the given marking at vertex v; returns its half-edge.
  int add_leg(int v, int marking);
  /// Adds an edge between v1 and v2 (a self-edge if equal); returns the half-edges.
  Edge add_edge(int v1, int v2);

  int num_vertices() const { return static_cast<int>(genera_.size()); }
  int num_half_edges() const { return static_cast<int>(vertex_of_.size()); }
  int num_legs() const { return num_legs_; }
  int num_edges() const { return (num_half_edges() - num_legs_) / 2; }

  int vertex_genus(int v) const { return genera_[v]; }
  void set_vertex_genus(int v, int g) { genera_[v] = g; }
  int vertex_of(int h) const { return vertex_of_[h]; }
  int partner(int h) const { return partner_[h]; }
  bool is_leg(int h) const { return partner_[h] == h; }
  /// Marking of a leg, 0 for half-edges of edges.
  int marking(int h) const { return marking_[h]; }
  void set_marking(int h, int m) { marking_[h] = m; }
  /// Half-edge carrying marking m, or -1.
  int leg_with_marking(int m) const;

  int valence(int v) const;
  std::vector<int> half_edges_at(int v) const;
  std::vector<Edge> edges() const;
  const std::vector<int>& genera() const { return genera_; }

  int h1() const { return num_edges() - num_vertices() + 1; }
  int genus() const;
  /// 3g - 3 + n of the ambient moduli space.
  int dimension() const { return 3 * genus() - 3 + num_legs_; }
  /// 3g(v) - 3 + n(v).
  int vertex_dimension(int v) const { return 3 * genera_[v] - 3 + valence(v); }

  bool connected() const;
  /// Throws std::invalid_argument unless connected, stable at every vertex,
  /// and the markings are exactly 1..n.
  void validate() const;

  /// Same graph with half-edges renumbered: legs by marking first, then the
  /// edges by their current order. perm[old] = new.
  StableGraph normalized(std::vector<int>* perm = nullptr) const;

  /// "G g=<g> n=<n>; V g0 g1 ...; E (a:b) ...; L m->v ..." with half-edges
  /// numbered as in normalized().
  std::string to_text() const;
  static StableGraph parse(std::string_view text);

  friend bool operator==(const StableGraph&, const StableGraph&) = default;

 private:
  std::vector<int> genera_;
  std::vector<int> vertex_of_;
  std::vector<int> partner_;
  std::vector<int> marking_;
  int num_legs_ = 0;
};

/// Result of contracting a set of edges; maps are -1 for removed half-edges.
struct Contraction {
  StableGraph graph;
  std::vector<int> half_edge_map;
  std::vector<int> vertex_map;
};

/// Contracts every edge containing one of the given half-edges.
Contraction contract_edges(const StableGraph& g, std::span<const int> edge_half_edges);
/// Contracts the edge containing half-edge h; throws if h is a leg.
StableGraph contract_edge(const StableGraph& g, int h);

/// A structure-preserving bijection a -> b fixing markings.
struct GraphIsomorphism {
  std::vector<int> vertex_map;
  std::vector<int> half_edge_map;
};

/// Every leg-fixing isomorphism a -> b (at most `limit`).
std::vector<GraphIsomorphism> isomorphisms(const StableGraph& a, const StableGraph& b,
                                           std::size_t limit = std::numeric_limits<std::size_t>::max());

}  // namespace tautrel
