#include "tautrel/stable_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tautrel {

int StableGraph::add_vertex(int genus) {
  if (genus < 0) throw std::invalid_argument("negative vertex genus");
  genera_.push_back(genus);
  return num_vertices() - 1;
}

int StableGraph::add_leg(int v, int marking) {
  const int h = num_half_edges();
  vertex_of_.push_back(v);
  partner_.push_back(h);
  marking_.push_back(marking);
  ++num_legs_;
  return h;
}

Edge StableGraph::add_edge(int v1, int v2) {
  const int h = num_half_edges();
  vertex_of_.insert(vertex_of_.end(), {v1, v2});
  partner_.insert(partner_.end(), {h + 1, h});
  marking_.insert(marking_.end(), {0, 0});
  return {h, h + 1};
}

int StableGraph::leg_with_marking(int m) const {
  for (int h = 0; h < num_half_edges(); ++h)
    if (is_leg(h) && marking_[h] == m) return h;
  return -1;
}

int StableGraph::valence(int v) const {
  return static_cast<int>(std::count(vertex_of_.begin(), vertex_of_.end(), v));
}

std::vector<int> StableGraph::half_edges_at(int v) const {
  std::vector<int> out;
  for (int h = 0; h < num_half_edges(); ++h)
    if (vertex_of_[h] == v) out.push_back(h);
  return out;
}

std::vector<Edge> StableGraph::edges() const {
  std::vector<Edge> out;
  for (int h = 0; h < num_half_edges(); ++h)
    if (partner_[h] > h) out.push_back({h, partner_[h]});
  return out;
}

int StableGraph::genus() const {
  return std::accumulate(genera_.begin(), genera_.end(), 0) + h1();
}

bool StableGraph::connected() const {
  if (genera_.empty()) return false;
  std::vector<int> parent(genera_.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& e : edges()) parent[find(vertex_of_[e.first])] = find(vertex_of_[e.second]);
  const int root = find(0);
  for (int v = 1; v < num_vertices(); ++v)
    if (find(v) != root) return false;
  return true;
}

void StableGraph::validate() const {
  if (genera_.empty()) throw std::invalid_argument("graph has no vertices");
  for (int h = 0; h < num_half_edges(); ++h) {
    if (vertex_of_[h] < 0 || vertex_of_[h] >= num_vertices())
      throw std::invalid_argument("half-edge attached to a missing vertex");
    if (partner_[partner_[h]] != h) throw std::invalid_argument("half-edge pairing is not an involution");
  }
  if (!connected()) throw std::invalid_argument("graph is not connected");
  for (int v = 0; v < num_vertices(); ++v)
    if (2 * genera_[v] - 2 + valence(v) <= 0) throw std::invalid_argument("unstable vertex");
  std::vector<int> marks;
  for (int h = 0; h < num_half_edges(); ++h)
    if (is_leg(h)) marks.push_back(marking_[h]);
  std::sort(marks.begin(), marks.end());
  for (std::size_t i = 0; i < marks.size(); ++i)
    if (marks[i] != static_cast<int>(i) + 1) throw std::invalid_argument("leg markings are not 1..n");
}

StableGraph StableGraph::normalized(std::vector<int>* perm) const {
  std::vector<int> order;
  std::vector<int> legs;
  for (int h = 0; h < num_half_edges(); ++h)
    if (is_leg(h)) legs.push_back(h);
  std::sort(legs.begin(), legs.end(), [&](int a, int b) { return marking_[a] < marking_[b]; });
  StableGraph out;
  out.genera_ = genera_;
  std::vector<int> p(num_half_edges(), -1);
  for (int h : legs) p[h] = out.add_leg(vertex_of_[h], marking_[h]);
  for (const auto& e : edges()) {
    const Edge ne = out.add_edge(vertex_of_[e.first], vertex_of_[e.second]);
    p[e.first] = ne.first;
    p[e.second] = ne.second;
  }
  if (perm) *perm = std::move(p);
  return out;
}

std::string StableGraph::to_text() const {
  const StableGraph g = normalized();
  std::ostringstream os;
  os << "G g=" << g.genus() << " n=" << g.num_legs() << "; V";
  for (int x : g.genera_) os << ' ' << x;
  os << "; E";
  for (const auto& e : g.edges()) os << " (" << g.vertex_of_[e.first] << ':' << g.vertex_of_[e.second] << ')';
  os << "; L";
  for (int h = 0; h < g.num_legs(); ++h) os << ' ' << g.marking_[h] << "->" << g.vertex_of_[h];
  return os.str();
}

namespace {

std::vector<std::string> split_segments(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ';') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && (s.back() == ' ' || s.back() == '\n' || s.back() == '\r')) s.pop_back();
  }
  return out;
}

}  // namespace

StableGraph StableGraph::parse(std::string_view text) {
  const auto seg = split_segments(text);
  if (seg.size() < 4 || seg[0].rfind("G ", 0) != 0 || seg[1].rfind("V", 0) != 0 || seg[2].rfind("E", 0) != 0 ||
      seg[3].rfind("L", 0) != 0)
    throw std::invalid_argument("malformed graph record: " + std::string(text));
  int g = -1, n = -1;
  if (std::sscanf(seg[0].c_str(), "G g=%d n=%d", &g, &n) != 2) throw std::invalid_argument("malformed graph header");
  StableGraph out;
  {
    std::istringstream is(seg[1].substr(1));
    int x;
    while (is >> x) out.add_vertex(x);
  }
  std::vector<std::pair<int, int>> edge_list;
  {
    std::string rest = seg[2].substr(1);
    std::size_t pos = 0;
    while ((pos = rest.find('(', pos)) != std::string::npos) {
      int a, b;
      if (std::sscanf(rest.c_str() + pos, "(%d:%d)", &a, &b) != 2) throw std::invalid_argument("malformed edge");
      edge_list.emplace_back(a, b);
      ++pos;
    }
  }
  std::vector<std::pair<int, int>> legs;
  {
    std::istringstream is(seg[3].substr(1));
    std::string tok;
    while (is >> tok) {
      int m, v;
      if (std::sscanf(tok.c_str(), "%d->%d", &m, &v) != 2) throw std::invalid_argument("malformed leg: " + tok);
      legs.emplace_back(m, v);
    }
  }
  std::sort(legs.begin(), legs.end());
  auto check_vertex = [&](int v) {
    if (v < 0 || v >= out.num_vertices()) throw std::invalid_argument("vertex index out of range");
  };
  for (auto [m, v] : legs) {
    check_vertex(v);
    out.add_leg(v, m);
  }
  for (auto [a, b] : edge_list) {
    check_vertex(a);
    check_vertex(b);
    out.add_edge(a, b);
  }
  out.validate();
  if (out.genus() != g || out.num_legs() != n) throw std::invalid_argument("graph header does not match body");
  return out;
}

Contraction contract_edges(const StableGraph& g, std::span<const int> edge_half_edges) {
  const int nv = g.num_vertices();
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<bool> removed(g.num_half_edges(), false);
  std::vector<int> extra_genus(nv, 0);
  // Union the endpoints in the given order; a contracted edge whose endpoints
  // are already merged closes a cycle and adds one to the genus.
  std::vector<Edge> to_contract;
  for (int h : edge_half_edges) {
    if (g.is_leg(h)) throw std::invalid_argument("cannot contract a leg");
    const Edge e{std::min(h, g.partner(h)), std::max(h, g.partner(h))};
    if (std::find(to_contract.begin(), to_contract.end(), e) == to_contract.end()) to_contract.push_back(e);
  }
  std::vector<int> cycles(nv, 0);
  for (const auto& e : to_contract) {
    removed[e.first] = removed[e.second] = true;
    const int a = find(g.vertex_of(e.first)), b = find(g.vertex_of(e.second));
    if (a == b) {
      cycles[a] += 1;
    } else {
      parent[a] = b;
      cycles[b] += cycles[a];
    }
  }
  Contraction out;
  out.vertex_map.assign(nv, -1);
  std::vector<int> root_index(nv, -1);
  for (int v = 0; v < nv; ++v) {
    const int r = find(v);
    if (root_index[r] < 0) root_index[r] = out.graph.add_vertex(0);
  }
  for (int v = 0; v < nv; ++v) {
    const int nvtx = root_index[find(v)];
    out.vertex_map[v] = nvtx;
    out.graph.set_vertex_genus(nvtx, out.graph.vertex_genus(nvtx) + g.vertex_genus(v));
  }
  for (int v = 0; v < nv; ++v)
    if (find(v) == v) out.graph.set_vertex_genus(root_index[v], out.graph.vertex_genus(root_index[v]) + cycles[v]);
  out.half_edge_map.assign(g.num_half_edges(), -1);
  for (int h = 0; h < g.num_half_edges(); ++h)
    if (g.is_leg(h)) out.half_edge_map[h] = out.graph.add_leg(out.vertex_map[g.vertex_of(h)], g.marking(h));
  for (const auto& e : g.edges()) {
    if (removed[e.first]) continue;
    const Edge ne = out.graph.add_edge(out.vertex_map[g.vertex_of(e.first)], out.vertex_map[g.vertex_of(e.second)]);
    out.half_edge_map[e.first] = ne.first;
    out.half_edge_map[e.second] = ne.second;
  }
  return out;
}

StableGraph contract_edge(const StableGraph& g, int h) {
  if (h < 0 || h >= g.num_half_edges() || g.is_leg(h)) throw std::invalid_argument("not an edge half-edge");
  const int hs[] = {h};
  return contract_edges(g, hs).graph;
}

namespace {

struct VertexSignature {
  int genus;
  int valence;
  int loops;
  std::vector<int> markings;
  friend bool operator==(const VertexSignature&, const VertexSignature&) = default;
};

VertexSignature signature(const StableGraph& g, int v) {
  VertexSignature s{g.vertex_genus(v), 0, 0, {}};
  for (int h : g.half_edges_at(v)) {
    ++s.valence;
    if (g.is_leg(h)) s.markings.push_back(g.marking(h));
    else if (g.vertex_of(g.partner(h)) == v && g.partner(h) > h) ++s.loops;
  }
  std::sort(s.markings.begin(), s.markings.end());
  return s;
}

std::vector<std::vector<int>> adjacency_counts(const StableGraph& g) {
  std::vector<std::vector<int>> m(g.num_vertices(), std::vector<int>(g.num_vertices(), 0));
  for (const auto& e : g.edges()) {
    const int a = g.vertex_of(e.first), b = g.vertex_of(e.second);
    ++m[a][b];
    if (a != b) ++m[b][a];
  }
  return m;
}

}  // namespace

std::vector<GraphIsomorphism> isomorphisms(const StableGraph& a, const StableGraph& b, std::size_t limit) {
  std::vector<GraphIsomorphism> out;
  if (a.num_vertices() != b.num_vertices() || a.num_half_edges() != b.num_half_edges() ||
      a.num_legs() != b.num_legs())
    return out;
  const int nv = a.num_vertices();
  std::vector<VertexSignature> sa, sb;
  for (int v = 0; v < nv; ++v) {
    sa.push_back(signature(a, v));
    sb.push_back(signature(b, v));
  }
  const auto adj_a = adjacency_counts(a), adj_b = adjacency_counts(b);
  std::vector<int> vmap(nv, -1);
  std::vector<bool> used(nv, false);

  auto emit_half_edge_maps = [&]() {
    // Group edges of a by endpoint pair; match them to b's edges on the image pair.
    std::map<std::pair<int, int>, std::vector<Edge>> groups_a, groups_b;
    for (const auto& e : a.edges()) {
      int u = a.vertex_of(e.first), w = a.vertex_of(e.second);
      Edge oriented = e;
      if (u > w) {
        std::swap(u, w);
        oriented = {e.second, e.first};
      }
      groups_a[{u, w}].push_back(oriented);
    }
    for (const auto& e : b.edges()) {
      const int u = b.vertex_of(e.first), w = b.vertex_of(e.second);
      groups_b[{std::min(u, w), std::max(u, w)}].push_back(e);
    }
    std::vector<int> hmap(a.num_half_edges(), -1);
    for (int h = 0; h < a.num_half_edges(); ++h)
      if (a.is_leg(h)) hmap[h] = b.leg_with_marking(a.marking(h));
    std::vector<std::pair<std::vector<Edge>, std::vector<Edge>>> groups;
    for (auto& [key, ea] : groups_a) {
      const int u = vmap[key.first], w = vmap[key.second];
      groups.emplace_back(ea, groups_b[{std::min(u, w), std::max(u, w)}]);
    }
    std::function<void(std::size_t)> rec = [&](std::size_t gi) {
      if (out.size() >= limit) return;
      if (gi == groups.size()) {
        out.push_back({vmap, hmap});
        return;
      }
      const auto& [ea, eb] = groups[gi];
      std::vector<int> perm(eb.size());
      std::iota(perm.begin(), perm.end(), 0);
      do {
        // Orientation choices: forced unless the edge is a loop.
        const int k = static_cast<int>(ea.size());
        std::vector<int> loops;
        for (int i = 0; i < k; ++i)
          if (a.vertex_of(ea[i].first) == a.vertex_of(ea[i].second)) loops.push_back(i);
        for (unsigned mask = 0; mask < (1u << loops.size()); ++mask) {
          for (int i = 0; i < k; ++i) {
            const Edge& ta = ea[i];
            const Edge& tb = eb[perm[i]];
            const int target_first_vertex = vmap[a.vertex_of(ta.first)];
            int f = tb.first, s = tb.second;
            if (b.vertex_of(f) != target_first_vertex) std::swap(f, s);
            hmap[ta.first] = f;
            hmap[ta.second] = s;
          }
          for (std::size_t li = 0; li < loops.size(); ++li) {
            if (mask & (1u << li)) {
              const Edge& ta = ea[loops[li]];
              std::swap(hmap[ta.first], hmap[ta.second]);
            }
          }
          rec(gi + 1);
          if (out.size() >= limit) return;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    };
    rec(0);
  };

  std::function<void(int)> assign = [&](int v) {
    if (out.size() >= limit) return;
    if (v == nv) {
      emit_half_edge_maps();
      return;
    }
    for (int w = 0; w < nv; ++w) {
      if (used[w] || !(sa[v] == sb[w])) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = adj_a[v][u] == adj_b[w][vmap[u]];
      if (!ok) continue;
      vmap[v] = w;
      used[w] = true;
      assign(v + 1);
      used[w] = false;
      vmap[v] = -1;
    }
  };
  if (a.genus() == b.genus()) assign(0);
  return out;
}

}  // namespace tautrel
