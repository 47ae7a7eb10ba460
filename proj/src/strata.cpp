#include "tautrel/strata.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "tautrel/enumerate.hpp"

namespace tautrel {

namespace {

bool vertex_ok(const DecoratedGraph& d, int v) { return d.vertex_decoration_degree(v) <= d.graph.vertex_dimension(v); }

/// Decorated graph assembled from explicit vertex, leg and edge lists.
struct Builder {
  struct Leg {
    int v, marking, psi;
  };
  struct Link {
    int v1, psi1, v2, psi2;
  };
  std::vector<int> genera;
  std::vector<KappaMonomial> kappa;
  std::vector<Leg> legs;
  std::vector<Link> edges;

  int add_vertex(int g, KappaMonomial k = {}) {
    genera.push_back(g);
    kappa.push_back(std::move(k));
    return static_cast<int>(genera.size()) - 1;
  }

  DecoratedGraph build() const {
    StableGraph s;
    for (int g : genera) s.add_vertex(g);
    std::vector<std::pair<int, int>> psi;
    for (const auto& l : legs) psi.emplace_back(s.add_leg(l.v, l.marking), l.psi);
    for (const auto& e : edges) {
      auto h = s.add_edge(e.v1, e.v2);
      psi.emplace_back(h.first, e.psi1);
      psi.emplace_back(h.second, e.psi2);
    }
    DecoratedGraph d(std::move(s));
    for (auto [h, p] : psi) d.psi[h] = p;
    d.kappa = kappa;
    for (auto& k : d.kappa) std::sort(k.begin(), k.end());
    return d;
  }
};

/// Builder holding a copy of d (legs first, then edges).
Builder copy_of(const DecoratedGraph& d) {
  Builder b;
  const auto& g = d.graph;
  for (int v = 0; v < g.num_vertices(); ++v) b.add_vertex(g.vertex_genus(v), d.kappa[v]);
  for (int h = 0; h < g.num_half_edges(); ++h)
    if (g.is_leg(h)) b.legs.push_back({g.vertex_of(h), g.marking(h), d.psi[h]});
  for (const auto& e : g.edges())
    b.edges.push_back({g.vertex_of(e.first), d.psi[e.first], g.vertex_of(e.second), d.psi[e.second]});
  return b;
}

/// Multiplies every term by (sum over v in verts of kappa_a[v]).
void spread_kappa(std::vector<BasicTerm>& terms, int a, const std::vector<int>& verts) {
  std::vector<BasicTerm> next;
  for (const auto& t : terms)
    for (int v : verts) {
      BasicTerm c = t;
      auto& k = c.graph.kappa[v];
      k.insert(std::upper_bound(k.begin(), k.end(), a), a);
      if (vertex_ok(c.graph, v)) next.push_back(std::move(c));
    }
  terms.swap(next);
}

/// Multiplies every term by psi_h^p.
void times_psi(std::vector<BasicTerm>& terms, int h, int p) {
  if (p == 0) return;
  std::vector<BasicTerm> next;
  for (auto& t : terms) {
    t.graph.psi[h] += p;
    if (vertex_ok(t.graph, t.graph.graph.vertex_of(h))) next.push_back(std::move(t));
  }
  terms.swap(next);
}

/// Multiplies every term by -(psi_h1 + psi_h2).
void excess(std::vector<BasicTerm>& terms, int h1, int h2) {
  std::vector<BasicTerm> next;
  for (const auto& t : terms)
    for (int h : {h1, h2}) {
      BasicTerm c = t;
      c.graph.psi[h] += 1;
      c.coeff = -c.coeff;
      if (vertex_ok(c.graph, c.graph.graph.vertex_of(h))) next.push_back(std::move(c));
    }
  terms.swap(next);
}

/// Merges equal classes and drops zero coefficients.
BasicCombination consolidate(const std::vector<BasicTerm>& terms) {
  std::map<std::string, BasicTerm> merged;
  for (const auto& t : terms) {
    if (!t.graph.within_vertex_bounds()) continue;
    auto c = canonicalize(t.graph);
    auto it = merged.find(c.key);
    if (it == merged.end()) merged.emplace(c.key, BasicTerm{std::move(c.representative), t.coeff});
    else it->second.coeff += t.coeff;
  }
  BasicCombination out;
  for (auto& [k, t] : merged)
    if (!is_zero(t.coeff)) out.push_back(std::move(t));
  return out;
}

struct BasisCache {
  std::vector<DecoratedGraph> reps;
  std::vector<std::string> keys;
};

BasisCache build_basis(int g, int n, int d) {
  BasisCache out;
  if (d < 0 || d > 3 * g - 3 + n) return out;
  std::map<std::string, DecoratedGraph> found;
  for (const auto& cls : stable_graph_classes(g, n)) {
    const auto& gr = cls.graph;
    const int e = gr.num_edges();
    if (e > d) continue;
    const int nv = gr.num_vertices();
    DecoratedGraph cur(gr);
    // Assign decorations vertex by vertex.
    std::function<void(int, int)> at_vertex = [&](int v, int rest) {
      if (v == nv) {
        if (rest != 0) return;
        auto c = canonicalize(cur);
        found.emplace(c.key, std::move(c.representative));
        return;
      }
      const auto hs = gr.half_edges_at(v);
      const int cap = std::min(rest, gr.vertex_dimension(v));
      for (int dv = 0; dv <= cap; ++dv) {
        for (int kd = 0; kd <= dv; ++kd) {
          // kappa partitions of kd (parts in increasing order)
          std::vector<KappaMonomial> parts;
          std::function<void(int, int, KappaMonomial&)> part = [&](int left, int min, KappaMonomial& m) {
            if (left == 0) {
              parts.push_back(m);
              return;
            }
            for (int a = min; a <= left; ++a) {
              m.push_back(a);
              part(left - a, a, m);
              m.pop_back();
            }
          };
          KappaMonomial m;
          part(kd, 1, m);
          for (const auto& km : parts) {
            cur.kappa[v] = km;
            // psi compositions of dv - kd over hs
            std::function<void(std::size_t, int)> comp = [&](std::size_t i, int left) {
              if (i == hs.size()) {
                if (left == 0) at_vertex(v + 1, rest - dv);
                return;
              }
              for (int p = 0; p <= left; ++p) {
                cur.psi[hs[i]] = p;
                comp(i + 1, left - p);
              }
              cur.psi[hs[i]] = 0;
            };
            comp(0, dv - kd);
          }
          cur.kappa[v].clear();
        }
      }
    };
    at_vertex(0, d - e);
  }
  for (auto& [k, rep] : found) {
    out.keys.push_back(k);
    out.reps.push_back(std::move(rep));
  }
  return out;
}

const BasisCache& basis_cache(int g, int n, int d) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<BasisCache>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({g, n, d});
    if (it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<BasisCache>(build_basis(g, n, d));
  std::lock_guard lock(mutex);
  auto& slot = cache[{g, n, d}];
  if (!slot) slot = std::move(built);
  return *slot;
}

}  // namespace

const std::vector<DecoratedGraph>& basis(int g, int n, int d) {
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) throw std::invalid_argument("unstable type (g, n)");
  return basis_cache(g, n, d).reps;
}

int basis_index(const DecoratedGraph& x) {
  const auto& b = basis_cache(x.graph.genus(), x.graph.num_legs(), x.degree());
  const auto key = canonicalize(x).key;
  auto it = std::lower_bound(b.keys.begin(), b.keys.end(), key);
  if (it == b.keys.end() || *it != key) return -1;
  return static_cast<int>(it - b.keys.begin());
}

Glued glue(const StableGraph& phi, const std::vector<DecoratedGraph>& parts) {
  const int nw = phi.num_vertices();
  if (static_cast<int>(parts.size()) != nw) throw std::invalid_argument("one part per vertex required");
  std::vector<std::vector<int>> hs(nw);
  for (int w = 0; w < nw; ++w) {
    hs[w] = phi.half_edges_at(w);
    const auto& pg = parts[w].graph;
    if (pg.genus() != phi.vertex_genus(w) || pg.num_legs() != static_cast<int>(hs[w].size()))
      throw std::invalid_argument("part does not match its vertex");
  }
  Glued out;
  StableGraph G;
  std::vector<int> offset(nw);
  for (int w = 0; w < nw; ++w) {
    offset[w] = G.num_vertices();
    for (int v = 0; v < parts[w].graph.num_vertices(); ++v) {
      G.add_vertex(parts[w].graph.vertex_genus(v));
      out.vertex_to_phi.push_back(w);
    }
  }
  // part half-edge -> glued half-edge
  std::vector<std::vector<int>> pmap(nw);
  for (int w = 0; w < nw; ++w) pmap[w].assign(parts[w].graph.num_half_edges(), -1);
  std::vector<int> phi_pos(phi.num_half_edges());
  for (int w = 0; w < nw; ++w)
    for (std::size_t j = 0; j < hs[w].size(); ++j) phi_pos[hs[w][j]] = static_cast<int>(j) + 1;
  auto part_leg = [&](int hphi) {
    const int w = phi.vertex_of(hphi);
    return parts[w].graph.leg_with_marking(phi_pos[hphi]);
  };
  auto glued_vertex = [&](int hphi) {
    const int w = phi.vertex_of(hphi);
    return offset[w] + parts[w].graph.vertex_of(part_leg(hphi));
  };
  out.phi_to_half_edge.assign(phi.num_half_edges(), -1);
  for (int h = 0; h < phi.num_half_edges(); ++h) {
    if (!phi.is_leg(h)) continue;
    const int gh = G.add_leg(glued_vertex(h), phi.marking(h));
    out.phi_to_half_edge[h] = gh;
    pmap[phi.vertex_of(h)][part_leg(h)] = gh;
  }
  for (const auto& e : phi.edges()) {
    auto ge = G.add_edge(glued_vertex(e.first), glued_vertex(e.second));
    out.phi_to_half_edge[e.first] = ge.first;
    out.phi_to_half_edge[e.second] = ge.second;
    pmap[phi.vertex_of(e.first)][part_leg(e.first)] = ge.first;
    pmap[phi.vertex_of(e.second)][part_leg(e.second)] = ge.second;
  }
  for (int w = 0; w < nw; ++w) {
    const auto& pg = parts[w].graph;
    for (const auto& e : pg.edges()) {
      auto ge = G.add_edge(offset[w] + pg.vertex_of(e.first), offset[w] + pg.vertex_of(e.second));
      pmap[w][e.first] = ge.first;
      pmap[w][e.second] = ge.second;
    }
  }
  out.half_edge_to_phi.assign(G.num_half_edges(), -1);
  for (int h = 0; h < phi.num_half_edges(); ++h) out.half_edge_to_phi[out.phi_to_half_edge[h]] = h;
  DecoratedGraph d(std::move(G));
  for (int w = 0; w < nw; ++w) {
    for (int h = 0; h < parts[w].graph.num_half_edges(); ++h) d.psi[pmap[w][h]] = parts[w].psi[h];
    for (int v = 0; v < parts[w].graph.num_vertices(); ++v) d.kappa[offset[w] + v] = parts[w].kappa[v];
  }
  out.graph = std::move(d);
  return out;
}

std::vector<GluedTerm> pullback_glued(const DecoratedGraph& x, const StableGraph& phi) {
  const auto& g1 = x.graph;
  if (g1.genus() != phi.genus() || g1.num_legs() != phi.num_legs())
    throw std::invalid_argument("pullback along a graph of a different type");
  const int e1 = g1.num_edges();
  const int ephi = phi.num_edges();
  const int nw = phi.num_vertices();
  std::vector<std::vector<const GraphClass*>> cands(nw);
  for (int w = 0; w < nw; ++w)
    for (const auto& c : stable_graph_classes(phi.vertex_genus(w), phi.valence(w)))
      if (c.graph.num_edges() <= e1) cands[w].push_back(&c);
  const auto phi_edges = phi.edges();

  std::vector<GluedTerm> out;
  std::vector<const GraphClass*> choice(nw);
  std::function<void(int, int)> rec = [&](int w, int t) {
    if (w < nw) {
      for (const auto* c : cands[w]) {
        if (t + c->graph.num_edges() > e1) continue;
        choice[w] = c;
        rec(w + 1, t + c->graph.num_edges());
      }
      return;
    }
    if (t + ephi < e1) return;
    const int s = t + ephi - e1;
    std::vector<DecoratedGraph> parts;
    Rational weight(1);
    for (const auto* c : choice) {
      parts.emplace_back(c->graph);
      weight /= static_cast<unsigned long>(c->aut_order);
    }
    const Glued gl = glue(phi, parts);
    const auto& G = gl.graph.graph;
    // Choose S, the phi edges contracted to recover Gamma1.
    std::vector<int> sel(ephi, 0);
    std::fill(sel.end() - s, sel.end(), 1);
    do {
      std::vector<int> contracted;
      for (int i = 0; i < ephi; ++i)
        if (sel[i]) contracted.push_back(gl.phi_to_half_edge[phi_edges[i].first]);
      const Contraction c = contract_edges(G, contracted);
      if (c.graph.num_vertices() != g1.num_vertices()) continue;
      const auto isos = isomorphisms(g1, c.graph);
      if (isos.empty()) continue;
      std::vector<int> back(c.graph.num_half_edges(), -1);
      for (int h = 0; h < G.num_half_edges(); ++h)
        if (c.half_edge_map[h] >= 0) back[c.half_edge_map[h]] = h;
      std::vector<std::vector<int>> fibre(c.graph.num_vertices());
      for (int v = 0; v < G.num_vertices(); ++v) fibre[c.vertex_map[v]].push_back(v);
      for (const auto& iso : isos) {
        std::vector<BasicTerm> terms{{gl.graph, weight}};
        for (int h = 0; h < g1.num_half_edges(); ++h) times_psi(terms, back[iso.half_edge_map[h]], x.psi[h]);
        for (int u = 0; u < g1.num_vertices(); ++u)
          for (int a : x.kappa[u]) spread_kappa(terms, a, fibre[iso.vertex_map[u]]);
        for (int i = 0; i < ephi; ++i)
          if (!sel[i])
            excess(terms, gl.phi_to_half_edge[phi_edges[i].first], gl.phi_to_half_edge[phi_edges[i].second]);
        for (auto& t : terms)
          out.push_back(GluedTerm{std::move(t.graph), gl.vertex_to_phi, gl.phi_to_half_edge, t.coeff});
      }
    } while (std::next_permutation(sel.begin(), sel.end()));
  };
  rec(0, 0);
  return out;
}

std::vector<DecoratedGraph> split_along_phi(const GluedTerm& t, const StableGraph& phi) {
  const auto& G = t.graph.graph;
  std::vector<int> phi_of(G.num_half_edges(), -1);
  for (int h = 0; h < phi.num_half_edges(); ++h) phi_of[t.phi_to_half_edge[h]] = h;
  std::vector<DecoratedGraph> out;
  for (int w = 0; w < phi.num_vertices(); ++w) {
    const auto hs = phi.half_edges_at(w);
    Builder b;
    std::vector<int> local(G.num_vertices(), -1);
    for (int v = 0; v < G.num_vertices(); ++v)
      if (t.vertex_to_phi[v] == w) local[v] = b.add_vertex(G.vertex_genus(v), t.graph.kappa[v]);
    for (std::size_t j = 0; j < hs.size(); ++j) {
      const int h = t.phi_to_half_edge[hs[j]];
      b.legs.push_back({local[G.vertex_of(h)], static_cast<int>(j) + 1, t.graph.psi[h]});
    }
    for (const auto& e : G.edges()) {
      if (phi_of[e.first] >= 0) continue;
      if (local[G.vertex_of(e.first)] < 0) continue;
      b.edges.push_back(
          {local[G.vertex_of(e.first)], t.graph.psi[e.first], local[G.vertex_of(e.second)], t.graph.psi[e.second]});
    }
    out.push_back(b.build());
  }
  return out;
}

std::vector<BasicTerm> product_terms(const DecoratedGraph& a, const DecoratedGraph& b) {
  // Pull the class with fewer edges back to the graph of the other one.
  const bool swap = a.graph.num_edges() > b.graph.num_edges();
  const DecoratedGraph& x = swap ? b : a;
  const DecoratedGraph& y = swap ? a : b;
  std::vector<BasicTerm> all;
  for (auto& t : pullback_glued(x, y.graph)) {
    std::vector<BasicTerm> terms{{std::move(t.graph), t.coeff}};
    for (int h = 0; h < y.graph.num_half_edges(); ++h) times_psi(terms, t.phi_to_half_edge[h], y.psi[h]);
    for (int w = 0; w < y.graph.num_vertices(); ++w) {
      if (y.kappa[w].empty()) continue;
      std::vector<int> verts;
      for (std::size_t v = 0; v < t.vertex_to_phi.size(); ++v)
        if (t.vertex_to_phi[v] == w) verts.push_back(static_cast<int>(v));
      for (int k : y.kappa[w]) spread_kappa(terms, k, verts);
    }
    for (auto& bt : terms) all.push_back(std::move(bt));
  }
  return all;
}

const BasicCombination& product_basic(const DecoratedGraph& a, const DecoratedGraph& b) {
  static std::mutex mutex;
  static std::unordered_map<std::string, std::unique_ptr<BasicCombination>> cache;
  auto ka = canonicalize(a);
  auto kb = canonicalize(b);
  if (kb.key < ka.key) std::swap(ka, kb);
  const std::string key = ka.key + '#' + kb.key;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto value = std::make_unique<BasicCombination>(consolidate(product_terms(ka.representative, kb.representative)));
  std::lock_guard lock(mutex);
  auto& slot = cache[key];
  if (!slot) slot = std::move(value);
  return *slot;
}

BasicCombination pullback_forgetful_basic(const DecoratedGraph& x) {
  const auto& g = x.graph;
  const int marking = g.num_legs() + 1;
  std::vector<BasicTerm> out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    // Leg n+1 on v; kappa_a[v] becomes kappa_a - psi_{n+1}^a.
    const auto& ks = x.kappa[v];
    const unsigned nk = static_cast<unsigned>(ks.size());
    for (unsigned mask = 0; mask < (1u << nk); ++mask) {
      Builder b = copy_of(x);
      KappaMonomial kept;
      int p = 0;
      for (unsigned i = 0; i < nk; ++i) {
        if (mask & (1u << i)) p += ks[i];
        else kept.push_back(ks[i]);
      }
      b.kappa[v] = kept;
      b.legs.push_back({v, marking, p});
      out.push_back({b.build(), Rational(__builtin_popcount(mask) % 2 ? -1 : 1)});
    }
    // psi_h^d becomes psi_h^d - [bubble carrying h and n+1, psi^{d-1} on v's side].
    for (int h : g.half_edges_at(v)) {
      const int d = x.psi[h];
      if (d == 0) continue;
      Builder b;
      for (int u = 0; u < g.num_vertices(); ++u) b.add_vertex(g.vertex_genus(u), x.kappa[u]);
      const int bubble = b.add_vertex(0);
      auto where = [&](int k) { return k == h ? bubble : g.vertex_of(k); };
      for (int k = 0; k < g.num_half_edges(); ++k)
        if (g.is_leg(k)) b.legs.push_back({where(k), g.marking(k), k == h ? 0 : x.psi[k]});
      for (const auto& e : g.edges())
        b.edges.push_back({where(e.first), e.first == h ? 0 : x.psi[e.first], where(e.second),
                           e.second == h ? 0 : x.psi[e.second]});
      b.legs.push_back({bubble, marking, 0});
      b.edges.push_back({v, d - 1, bubble, 0});
      out.push_back({b.build(), Rational(-1)});
    }
  }
  return consolidate(out);
}

BasicCombination pushforward_forgetful_basic(const DecoratedGraph& x) {
  const auto& g = x.graph;
  const int marking = g.num_legs();
  const int leg = g.leg_with_marking(marking);
  if (leg < 0) throw std::invalid_argument("no leg to forget");
  const int v = g.vertex_of(leg);
  const int a = x.psi[leg];
  std::vector<BasicTerm> out;

  if (g.vertex_genus(v) == 0 && g.valence(v) == 3) {
    if (a != 0 || !x.kappa[v].empty()) return {};
    std::vector<int> others;
    for (int h : g.half_edges_at(v))
      if (h != leg) others.push_back(h);
    Builder b;
    std::vector<int> nv(g.num_vertices(), -1);
    for (int u = 0; u < g.num_vertices(); ++u)
      if (u != v) nv[u] = b.add_vertex(g.vertex_genus(u), x.kappa[u]);
    const int h1 = others[0], h2 = others[1];
    for (int k = 0; k < g.num_half_edges(); ++k)
      if (g.is_leg(k) && g.vertex_of(k) != v) b.legs.push_back({nv[g.vertex_of(k)], g.marking(k), x.psi[k]});
    for (const auto& e : g.edges()) {
      if (g.vertex_of(e.first) == v || g.vertex_of(e.second) == v) continue;
      b.edges.push_back({nv[g.vertex_of(e.first)], x.psi[e.first], nv[g.vertex_of(e.second)], x.psi[e.second]});
    }
    if (g.is_leg(h1) && g.is_leg(h2)) throw std::invalid_argument("forgetful pushforward to an unstable type");
    if (g.is_leg(h1) || g.is_leg(h2)) {
      const int l = g.is_leg(h1) ? h1 : h2;
      const int p = g.partner(g.is_leg(h1) ? h2 : h1);
      b.legs.push_back({nv[g.vertex_of(p)], g.marking(l), x.psi[p]});
    } else {
      const int p1 = g.partner(h1), p2 = g.partner(h2);
      b.edges.push_back({nv[g.vertex_of(p1)], x.psi[p1], nv[g.vertex_of(p2)], x.psi[p2]});
    }
    out.push_back({b.build(), Rational(1)});
    return consolidate(out);
  }

  // Stable vertex: forget the leg, keeping the rest of the graph.
  auto without_leg = [&](const DecoratedGraph& y) {
    Builder b;
    for (int u = 0; u < g.num_vertices(); ++u) b.add_vertex(g.vertex_genus(u), y.kappa[u]);
    for (int k = 0; k < g.num_half_edges(); ++k)
      if (g.is_leg(k) && k != leg) b.legs.push_back({g.vertex_of(k), g.marking(k), y.psi[k]});
    for (const auto& e : g.edges())
      b.edges.push_back({g.vertex_of(e.first), y.psi[e.first], g.vertex_of(e.second), y.psi[e.second]});
    return b;
  };
  const auto& ks = x.kappa[v];
  const unsigned nk = static_cast<unsigned>(ks.size());
  const int kappa0 = 2 * g.vertex_genus(v) - 2 + g.valence(v) - 1;
  for (unsigned mask = 0; mask < (1u << nk); ++mask) {
    int s = a;
    KappaMonomial kept;
    for (unsigned i = 0; i < nk; ++i) {
      if (mask & (1u << i)) s += ks[i];
      else kept.push_back(ks[i]);
    }
    if (s == 0) continue;
    Builder b = without_leg(x);
    Rational c(1);
    if (s - 1 >= 1) kept.push_back(s - 1);
    else c = kappa0;
    b.kappa[v] = kept;
    out.push_back({b.build(), c});
  }
  if (a == 0) {
    for (int h : g.half_edges_at(v)) {
      if (h == leg || x.psi[h] == 0) continue;
      DecoratedGraph y = x;
      y.psi[h] -= 1;
      out.push_back({without_leg(y).build(), Rational(1)});
    }
  }
  return consolidate(out);
}

DecoratedGraph relabel_markings(const DecoratedGraph& x, const std::vector<int>& perm) {
  DecoratedGraph y = x;
  for (int h = 0; h < y.graph.num_half_edges(); ++h)
    if (y.graph.is_leg(h)) y.graph.set_marking(h, perm.at(y.graph.marking(h) - 1));
  return y;
}

std::map<KappaMonomial, Rational> forgetful_psi_pushforward(const std::vector<int>& k) {
  static std::mutex mutex;
  static std::map<std::vector<int>, std::map<KappaMonomial, Rational>> cache;
  std::vector<int> key = k;
  std::sort(key.begin(), key.end());
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const int m = static_cast<int>(key.size());
  std::map<KappaMonomial, Rational> out;
  std::vector<int> sigma(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    std::vector<char> seen(m, 0);
    KappaMonomial mono;
    for (int i = 0; i < m; ++i) {
      if (seen[i]) continue;
      int sum = 0;
      for (int j = i; !seen[j]; j = sigma[j]) {
        seen[j] = 1;
        sum += key[j] - 1;
      }
      mono.push_back(sum);
    }
    std::sort(mono.begin(), mono.end());
    out[mono] += 1;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  std::lock_guard lock(mutex);
  cache.emplace(key, out);
  return out;
}

TautClass psi_class(int g, int n, int i, int power) {
  DecoratedGraph d(trivial_graph(g, n));
  d.psi[d.graph.leg_with_marking(i)] = power;
  TautClass c(g, n);
  c.add(d, Rational(1));
  return c;
}

TautClass kappa_class(int g, int n, const KappaMonomial& m) {
  DecoratedGraph d(trivial_graph(g, n));
  d.kappa[0] = m;
  std::sort(d.kappa[0].begin(), d.kappa[0].end());
  TautClass c(g, n);
  c.add(d, Rational(1));
  return c;
}

TautClass boundary_class(const StableGraph& gamma) {
  TautClass c(gamma.genus(), gamma.num_legs());
  c.add(DecoratedGraph(gamma), Rational(1));
  return c;
}

}  // namespace tautrel
