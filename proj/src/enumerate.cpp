#include "tautrel/enumerate.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "tautrel/decorated_graph.hpp"

namespace tautrel {

StableGraph trivial_graph(int g, int n) {
  StableGraph t;
  t.add_vertex(g);
  for (int m = 1; m <= n; ++m) t.add_leg(0, m);
  return t;
}

namespace {

/// Rebuilds `g` with half-edge h moved to vertex new_vertex[h] and an extra
/// edge between vertices a and b; `extra_genus` holds the new vertex genera.
StableGraph rebuild(const StableGraph& g, const std::vector<int>& genera, const std::vector<int>& new_vertex, int a,
                    int b) {
  StableGraph out;
  for (int x : genera) out.add_vertex(x);
  for (int h = 0; h < g.num_half_edges(); ++h)
    if (g.is_leg(h)) out.add_leg(new_vertex[h], g.marking(h));
  for (const auto& e : g.edges()) out.add_edge(new_vertex[e.first], new_vertex[e.second]);
  out.add_edge(a, b);
  return out;
}

/// All one-step degenerations of vertex v.
std::vector<StableGraph> degenerations(const StableGraph& g, int v) {
  std::vector<StableGraph> out;
  std::vector<int> vertex(g.num_half_edges());
  for (int h = 0; h < g.num_half_edges(); ++h) vertex[h] = g.vertex_of(h);
  const int gv = g.vertex_genus(v);
  if (gv > 0) {
    std::vector<int> genera = g.genera();
    genera[v] = gv - 1;
    out.push_back(rebuild(g, genera, vertex, v, v));
  }
  const std::vector<int> hs = g.half_edges_at(v);
  const int k = static_cast<int>(hs.size());
  const int w = g.num_vertices();
  for (int g1 = 0; g1 <= gv; ++g1) {
    const int g2 = gv - g1;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      const int n2 = __builtin_popcount(mask);
      const int n1 = k - n2;
      if (2 * g1 - 2 + n1 + 1 <= 0 || 2 * g2 - 2 + n2 + 1 <= 0) continue;
      std::vector<int> nv = vertex;
      for (int i = 0; i < k; ++i)
        if (mask & (1u << i)) nv[hs[i]] = w;
      std::vector<int> genera = g.genera();
      genera[v] = g1;
      genera.push_back(g2);
      out.push_back(rebuild(g, genera, nv, v, w));
    }
  }
  return out;
}

std::vector<GraphClass> build_classes(int g, int n) {
  std::map<std::string, GraphClass> all;
  std::map<std::string, GraphClass> level;
  {
    StableGraph t = trivial_graph(g, n);
    auto c = canonicalize(t);
    level.emplace(c.key, GraphClass{std::move(t), c.key, c.aut_order});
  }
  const int max_edges = 3 * g - 3 + n;
  for (int e = 0; !level.empty(); ++e) {
    std::map<std::string, GraphClass> next;
    if (e < max_edges) {
      for (const auto& [key, cls] : level) {
        for (int v = 0; v < cls.graph.num_vertices(); ++v) {
          for (auto& d : degenerations(cls.graph, v)) {
            auto c = canonicalize(d);
            if (next.count(c.key)) continue;
            auto rep = canonicalize(DecoratedGraph(d)).representative.graph;
            next.emplace(c.key, GraphClass{std::move(rep), c.key, c.aut_order});
          }
        }
      }
    }
    for (auto& [key, cls] : level) all.emplace(key, std::move(cls));
    level = std::move(next);
  }
  std::vector<GraphClass> out;
  for (auto& [key, cls] : all) out.push_back(std::move(cls));
  return out;
}

}  // namespace

const std::vector<GraphClass>& stable_graph_classes(int g, int n) {
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) throw std::invalid_argument("unstable type (g, n)");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<std::vector<GraphClass>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{g, n}];
  if (!slot) slot = std::make_unique<std::vector<GraphClass>>(build_classes(g, n));
  return *slot;
}

std::vector<StableGraph> enumerate_stable_graphs(int g, int n, std::optional<int> max_edges) {
  std::vector<StableGraph> out;
  for (const auto& c : stable_graph_classes(g, n))
    if (!max_edges || c.graph.num_edges() <= *max_edges) out.push_back(c.graph);
  return out;
}

std::vector<StableGraph> one_edge_graphs(int g, int n) {
  std::vector<StableGraph> out;
  for (const auto& c : stable_graph_classes(g, n))
    if (c.graph.num_edges() == 1) out.push_back(c.graph);
  return out;
}

}  // namespace tautrel
