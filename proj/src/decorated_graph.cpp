#include "tautrel/decorated_graph.hpp"

#include <algorithm>
#include <array>
#include <tuple>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tautrel {

int kappa_degree(const KappaMonomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

DecoratedGraph::DecoratedGraph(StableGraph g)
    : graph(std::move(g)), kappa(graph.num_vertices()), psi(graph.num_half_edges(), 0) {}

int DecoratedGraph::vertex_decoration_degree(int v) const {
  int d = kappa_degree(kappa[v]);
  for (int h = 0; h < graph.num_half_edges(); ++h)
    if (graph.vertex_of(h) == v) d += psi[h];
  return d;
}

int DecoratedGraph::degree() const {
  int d = graph.num_edges();
  for (const auto& k : kappa) d += kappa_degree(k);
  for (int p : psi) d += p;
  return d;
}

bool DecoratedGraph::within_vertex_bounds() const {
  std::vector<int> deg(graph.num_vertices(), 0);
  for (int v = 0; v < graph.num_vertices(); ++v) deg[v] = kappa_degree(kappa[v]);
  for (int h = 0; h < graph.num_half_edges(); ++h) deg[graph.vertex_of(h)] += psi[h];
  for (int v = 0; v < graph.num_vertices(); ++v)
    if (deg[v] > graph.vertex_dimension(v)) return false;
  return true;
}

std::string DecoratedGraph::to_text() const {
  std::vector<int> perm;
  graph.normalized(&perm);
  std::ostringstream os;
  os << graph.to_text();
  for (int v = 0; v < graph.num_vertices(); ++v) {
    if (kappa[v].empty()) continue;
    os << "; K v" << v << ':';
    std::map<int, int> counts;
    for (int a : kappa[v]) ++counts[a];
    for (auto [a, x] : counts) os << ' ' << a << '^' << x;
  }
  std::vector<std::pair<int, int>> psis;
  for (int h = 0; h < graph.num_half_edges(); ++h)
    if (psi[h] > 0) psis.emplace_back(perm[h], psi[h]);
  std::sort(psis.begin(), psis.end());
  for (auto [h, y] : psis) os << "; P h" << h << ": " << y;
  return os.str();
}

DecoratedGraph DecoratedGraph::parse(std::string_view text) {
  std::string s(text);
  // The first four segments are the graph; the rest are decorations.
  std::size_t cut = 0;
  for (int seen = 0; cut < s.size(); ++cut) {
    if (s[cut] == ';' && ++seen == 4) break;
  }
  DecoratedGraph d(StableGraph::parse(s.substr(0, cut)));
  std::istringstream rest(cut < s.size() ? s.substr(cut + 1) : std::string());
  std::string seg;
  while (std::getline(rest, seg, ';')) {
    while (!seg.empty() && seg.front() == ' ') seg.erase(seg.begin());
    if (seg.empty()) continue;
    if (seg[0] == 'K') {
      int v;
      if (std::sscanf(seg.c_str(), "K v%d:", &v) != 1 || v < 0 || v >= d.graph.num_vertices())
        throw std::invalid_argument("malformed kappa segment: " + seg);
      std::istringstream is(seg.substr(seg.find(':') + 1));
      std::string tok;
      while (is >> tok) {
        int a, x;
        if (std::sscanf(tok.c_str(), "%d^%d", &a, &x) != 2 || a < 1 || x < 1)
          throw std::invalid_argument("malformed kappa factor: " + tok);
        for (int i = 0; i < x; ++i) d.kappa[v].push_back(a);
      }
      std::sort(d.kappa[v].begin(), d.kappa[v].end());
    } else if (seg[0] == 'P') {
      int h, y;
      if (std::sscanf(seg.c_str(), "P h%d: %d", &h, &y) != 2 || h < 0 || h >= d.graph.num_half_edges() || y < 0)
        throw std::invalid_argument("malformed psi segment: " + seg);
      d.psi[h] = y;
    } else {
      throw std::invalid_argument("unknown decoration segment: " + seg);
    }
  }
  return d;
}

namespace {

using Label = std::vector<int>;

Label vertex_label(const DecoratedGraph& d, int v) {
  const auto& g = d.graph;
  Label l{g.vertex_genus(v), g.valence(v), static_cast<int>(d.kappa[v].size())};
  l.insert(l.end(), d.kappa[v].begin(), d.kappa[v].end());
  std::vector<std::pair<int, int>> legs;
  for (int h : g.half_edges_at(v))
    if (g.is_leg(h)) legs.emplace_back(g.marking(h), d.psi[h]);
  std::sort(legs.begin(), legs.end());
  l.push_back(static_cast<int>(legs.size()));
  for (auto [m, p] : legs) l.insert(l.end(), {m, p});
  return l;
}

std::vector<int> rank_labels(const std::vector<Label>& labels) {
  std::vector<Label> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> ranks(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    ranks[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), labels[i]) - sorted.begin());
  return ranks;
}

struct EdgeTuple {
  int pos_a, psi_a, pos_b, psi_b;
  int h_a, h_b;  // half-edges in the source graph
  auto key() const { return std::tie(pos_a, psi_a, pos_b, psi_b); }
};

}  // namespace

CanonicalDecorated canonicalize(const DecoratedGraph& d) {
  const auto& g = d.graph;
  const int nv = g.num_vertices();
  std::vector<Label> base(nv);
  for (int v = 0; v < nv; ++v) base[v] = vertex_label(d, v);
  std::vector<int> color = rank_labels(base);
  int classes = color.empty() ? 0 : *std::max_element(color.begin(), color.end()) + 1;
  const auto edges = g.edges();
  while (true) {
    std::vector<Label> refined(nv);
    for (int v = 0; v < nv; ++v) refined[v] = {color[v]};
    std::vector<std::vector<std::array<int, 3>>> nbrs(nv);
    for (const auto& e : edges) {
      const int a = g.vertex_of(e.first), b = g.vertex_of(e.second);
      nbrs[a].push_back({color[b], d.psi[e.first], d.psi[e.second]});
      nbrs[b].push_back({color[a], d.psi[e.second], d.psi[e.first]});
    }
    for (int v = 0; v < nv; ++v) {
      std::sort(nbrs[v].begin(), nbrs[v].end());
      for (const auto& t : nbrs[v]) refined[v].insert(refined[v].end(), t.begin(), t.end());
    }
    std::vector<int> next = rank_labels(refined);
    const int next_classes = next.empty() ? 0 : *std::max_element(next.begin(), next.end()) + 1;
    color = std::move(next);
    if (next_classes == classes) break;
    classes = next_classes;
  }

  // Vertices grouped by color; try every ordering inside each color class.
  std::vector<std::vector<int>> cls(classes);
  for (int v = 0; v < nv; ++v) cls[color[v]].push_back(v);
  std::vector<int> order;
  for (auto& c : cls) order.insert(order.end(), c.begin(), c.end());

  std::vector<int> best_code;
  std::vector<int> best_order;
  std::uint64_t vertex_auts = 0;
  std::vector<int> pos(nv);

  auto encode = [&](const std::vector<int>& ord, std::vector<EdgeTuple>* tuples_out) {
    for (int p = 0; p < nv; ++p) pos[ord[p]] = p;
    std::vector<EdgeTuple> tuples;
    tuples.reserve(edges.size());
    for (const auto& e : edges) {
      EdgeTuple t{pos[g.vertex_of(e.first)], d.psi[e.first], pos[g.vertex_of(e.second)], d.psi[e.second], e.first,
                  e.second};
      if (std::make_pair(t.pos_b, t.psi_b) < std::make_pair(t.pos_a, t.psi_a)) {
        std::swap(t.pos_a, t.pos_b);
        std::swap(t.psi_a, t.psi_b);
        std::swap(t.h_a, t.h_b);
      }
      tuples.push_back(t);
    }
    std::sort(tuples.begin(), tuples.end(), [](const EdgeTuple& x, const EdgeTuple& y) { return x.key() < y.key(); });
    std::vector<int> code;
    code.reserve(4 * tuples.size());
    for (const auto& t : tuples) code.insert(code.end(), {t.pos_a, t.psi_a, t.pos_b, t.psi_b});
    if (tuples_out) *tuples_out = std::move(tuples);
    return code;
  };

  std::function<void(std::size_t)> permute = [&](std::size_t ci) {
    if (ci == cls.size()) {
      auto code = encode(order, nullptr);
      if (vertex_auts == 0 || code < best_code) {
        best_code = std::move(code);
        best_order = order;
        vertex_auts = 1;
      } else if (code == best_code) {
        ++vertex_auts;
      }
      return;
    }
    std::size_t start = 0;
    for (std::size_t i = 0; i < ci; ++i) start += cls[i].size();
    auto first = order.begin() + static_cast<long>(start);
    auto last = first + static_cast<long>(cls[ci].size());
    std::sort(first, last);
    do {
      permute(ci + 1);
    } while (std::next_permutation(first, last));
  };
  permute(0);

  std::vector<EdgeTuple> tuples;
  encode(best_order, &tuples);

  // Edge symmetries for a fixed vertex bijection: permute equal tuples, and
  // flip loops whose two half-edges carry the same psi power.
  std::uint64_t edge_auts = 1;
  for (std::size_t i = 0; i < tuples.size();) {
    std::size_t j = i;
    while (j < tuples.size() && tuples[j].key() == tuples[i].key()) ++j;
    for (std::uint64_t k = 2; k <= j - i; ++k) edge_auts *= k;
    i = j;
  }
  for (const auto& t : tuples)
    if (t.pos_a == t.pos_b && t.psi_a == t.psi_b) edge_auts *= 2;

  CanonicalDecorated out;
  out.aut_order = vertex_auts * edge_auts;

  StableGraph rep;
  for (int p = 0; p < nv; ++p) rep.add_vertex(g.vertex_genus(best_order[p]));
  for (int p = 0; p < nv; ++p) pos[best_order[p]] = p;
  std::vector<int> legs;
  for (int h = 0; h < g.num_half_edges(); ++h)
    if (g.is_leg(h)) legs.push_back(h);
  std::sort(legs.begin(), legs.end(), [&](int a, int b) { return g.marking(a) < g.marking(b); });
  DecoratedGraph r;
  std::vector<int> new_psi;
  for (int h : legs) {
    rep.add_leg(pos[g.vertex_of(h)], g.marking(h));
    new_psi.push_back(d.psi[h]);
  }
  for (const auto& t : tuples) {
    rep.add_edge(t.pos_a, t.pos_b);
    new_psi.push_back(t.psi_a);
    new_psi.push_back(t.psi_b);
  }
  r.graph = std::move(rep);
  r.psi = std::move(new_psi);
  r.kappa.resize(nv);
  for (int p = 0; p < nv; ++p) r.kappa[p] = d.kappa[best_order[p]];

  std::ostringstream key;
  key << g.genus() << '|' << g.num_legs() << '|';
  for (int p = 0; p < nv; ++p) {
    for (int x : base[best_order[p]]) key << x << ',';
    key << '/';
  }
  key << '|';
  for (int x : best_code) key << x << ',';
  out.key = key.str();
  out.representative = std::move(r);
  return out;
}

CanonicalForm canonicalize(const StableGraph& g) {
  auto c = canonicalize(DecoratedGraph(g));
  return {std::move(c.key), c.aut_order};
}

}  // namespace tautrel
