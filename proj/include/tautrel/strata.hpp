#pragma once

#include <map>
#include <string>
#include <vector>

#include "tautrel/decorated_graph.hpp"
#include "tautrel/stable_graph.hpp"
#include "tautrel/taut_class.hpp"

namespace tautrel {

/// Every basis element [Gamma, gamma] of S_{g,n} of degree d, as canonical
/// representatives ordered by canonical key. Empty when d is out of range.
const std::vector<DecoratedGraph>& basis(int g, int n, int d);

/// Position of the class of x in basis(g, n, deg x), or -1.
int basis_index(const DecoratedGraph& x);

// ---------------------------------------------------------------------------
// Gluing along a stable graph.

/// Gamma obtained by inserting a graph at each vertex w of phi. The legs of
/// parts[w] are marked 1..n(w), matching phi.half_edges_at(w) in order.
struct Glued {
  DecoratedGraph graph;
  std::vector<int> vertex_to_phi;     // vertex of graph -> vertex of phi
  std::vector<int> half_edge_to_phi;  // half-edge of graph -> half-edge of phi, or -1
  std::vector<int> phi_to_half_edge;  // half-edge of phi -> half-edge of graph
};
Glued glue(const StableGraph& phi, const std::vector<DecoratedGraph>& parts);

/// A term of the pullback of a basic class along xi_phi, written on the glued
/// graph Gamma (so that grafting is the identity on the representation).
struct GluedTerm {
  DecoratedGraph graph;
  std::vector<int> vertex_to_phi;
  std::vector<int> phi_to_half_edge;
  Rational coeff;
};

/// xi_phi^* [Gamma1, gamma1], as a combination of classes pushed forward from
/// boundary strata of M_phi. Terms vanishing by the vertex bound are dropped.
std::vector<GluedTerm> pullback_glued(const DecoratedGraph& x, const StableGraph& phi);

/// Basis product [G1, g1] . [G2, g2] (generic gluings with excess classes).
/// The terms are not merged; product_basic merges and caches them.
std::vector<BasicTerm> product_terms(const DecoratedGraph& a, const DecoratedGraph& b);
const BasicCombination& product_basic(const DecoratedGraph& a, const DecoratedGraph& b);

/// p^* along the map forgetting marking n+1.
BasicCombination pullback_forgetful_basic(const DecoratedGraph& x);
/// p_* along the map forgetting the largest marking.
BasicCombination pushforward_forgetful_basic(const DecoratedGraph& x);

/// Renames markings: new marking of leg with marking m is perm[m - 1].
DecoratedGraph relabel_markings(const DecoratedGraph& x, const std::vector<int>& perm);

/// p_{m*}(psi_{n+1}^{k_1} ... psi_{n+m}^{k_m}) with all k_i >= 2, as a
/// polynomial in kappa classes: sum over permutations of the product over
/// cycles c of kappa_{sum_{i in c} (k_i - 1)}.
std::map<KappaMonomial, Rational> forgetful_psi_pushforward(const std::vector<int>& k);

/// Coefficients of kappa(f) = sum_m 1/m! p_{m*}(f(psi_{n+1}) ... f(psi_{n+m}))
/// up to degree max_degree, for f = sum_{k>=2} f[k] T^k (f[0], f[1] must vanish).
template <class S>
std::map<KappaMonomial, S> kappa_series(const std::vector<S>& f, int max_degree);

// ---------------------------------------------------------------------------
// Class-level operations.

template <class S>
TautClassT<S> product(const TautClassT<S>& a, const TautClassT<S>& b) {
  if (a.genus() != b.genus() || a.num_markings() != b.num_markings())
    throw std::invalid_argument("product of classes on different moduli spaces");
  TautClassT<S> out(a.genus(), a.num_markings());
  const int dim = 3 * a.genus() - 3 + a.num_markings();
  for (const auto& [ka, ea] : a.terms())
    for (const auto& [kb, eb] : b.terms()) {
      if (ea.graph.degree() + eb.graph.degree() > dim) continue;
      out.add(product_basic(ea.graph, eb.graph), ea.coeff * eb.coeff);
    }
  return out;
}

template <class S>
TautClassT<S> pullback_forgetful(const TautClassT<S>& x) {
  TautClassT<S> out(x.genus(), x.num_markings() + 1);
  for (const auto& [k, e] : x.terms()) out.add(pullback_forgetful_basic(e.graph), e.coeff);
  return out;
}

template <class S>
TautClassT<S> pushforward_forgetful(const TautClassT<S>& x) {
  if (x.num_markings() == 0 || 2 * x.genus() - 2 + x.num_markings() - 1 <= 0)
    throw std::invalid_argument("forgetful pushforward to an unstable type");
  TautClassT<S> out(x.genus(), x.num_markings() - 1);
  for (const auto& [k, e] : x.terms()) out.add(pushforward_forgetful_basic(e.graph), e.coeff);
  return out;
}

template <class S>
TautClassT<S> relabel_markings(const TautClassT<S>& x, const std::vector<int>& perm) {
  TautClassT<S> out(x.genus(), x.num_markings());
  for (const auto& [k, e] : x.terms()) out.add(relabel_markings(e.graph, perm), e.coeff);
  return out;
}

/// A class on M_phi = prod_w M_{g(w), n(w)}: each term is one decorated graph
/// per vertex of phi (legs ordered as phi.half_edges_at(w)).
template <class S>
struct FactorClassT {
  StableGraph phi;
  struct Entry {
    std::vector<DecoratedGraph> factors;
    S coeff;
  };
  std::map<std::vector<std::string>, Entry> terms;

  void add(std::vector<DecoratedGraph> factors, const S& c) {
    if (tautrel::is_zero(c)) return;
    std::vector<std::string> key;
    for (auto& f : factors) {
      if (!f.within_vertex_bounds()) return;
      auto cf = canonicalize(f);
      key.push_back(cf.key);
      f = std::move(cf.representative);
    }
    auto it = terms.find(key);
    if (it == terms.end()) {
      terms.emplace(std::move(key), Entry{std::move(factors), c});
      return;
    }
    it->second.coeff = it->second.coeff + c;
    if (tautrel::is_zero(it->second.coeff)) terms.erase(it);
  }
};
using FactorClass = FactorClassT<Rational>;

/// Cuts a glued term along the phi edges into one decorated graph per vertex of phi.
std::vector<DecoratedGraph> split_along_phi(const GluedTerm& t, const StableGraph& phi);

/// xi_phi^* x for a stable graph phi of the same type (typically one edge).
template <class S>
FactorClassT<S> pullback_boundary(const TautClassT<S>& x, const StableGraph& phi) {
  FactorClassT<S> out{phi, {}};
  for (const auto& [k, e] : x.terms())
    for (const auto& t : pullback_glued(e.graph, phi)) out.add(split_along_phi(t, phi), e.coeff * S(t.coeff));
  return out;
}

/// xi_phi_* of a class on M_phi: graft each factor into phi.
template <class S>
TautClassT<S> pushforward_boundary(const FactorClassT<S>& y) {
  TautClassT<S> out(y.phi.genus(), y.phi.num_legs());
  for (const auto& [k, e] : y.terms) out.add(glue(y.phi, e.factors).graph, e.coeff);
  return out;
}

// ---------------------------------------------------------------------------
// Named classes.

/// psi_i^power on M_{g,n}.
TautClass psi_class(int g, int n, int i, int power = 1);
/// A kappa monomial on M_{g,n}.
TautClass kappa_class(int g, int n, const KappaMonomial& m);
/// [Gamma, 1].
TautClass boundary_class(const StableGraph& gamma);

/// kappa(f) on M_{g,n} truncated at degree 3g - 3 + n.
template <class S>
TautClassT<S> kappa_series_class(int g, int n, const std::vector<S>& f) {
  TautClassT<S> out(g, n);
  for (const auto& [m, c] : kappa_series(f, 3 * g - 3 + n)) {
    StableGraph t;
    t.add_vertex(g);
    for (int i = 1; i <= n; ++i) t.add_leg(0, i);
    DecoratedGraph d(std::move(t));
    d.kappa[0] = m;
    out.add(d, c);
  }
  return out;
}

template <class S>
std::map<KappaMonomial, S> kappa_series(const std::vector<S>& f, int max_degree) {
  for (std::size_t k = 0; k < f.size() && k < 2; ++k)
    if (!tautrel::is_zero(f[k])) throw std::invalid_argument("kappa(f) needs f(0) = f'(0) = 0");
  std::map<KappaMonomial, S> out;
  out[{}] = S(1);
  // Multisets of exponents k >= 2 with sum (k - 1) <= max_degree, weighted by
  // 1/m! times the number of orderings: 1 / prod mult!.
  std::vector<int> ks;
  auto rec = [&](auto&& self, int min_k, int budget, const S& weight) -> void {
    for (int k = min_k; k - 1 <= budget && k < static_cast<int>(f.size()); ++k) {
      if (tautrel::is_zero(f[k])) continue;
      ks.push_back(k);
      int mult = 0;
      for (int x : ks) mult += (x == k);
      S w = weight * f[k] * S(Rational(1, mult));
      for (const auto& [m, c] : forgetful_psi_pushforward(ks)) {
        S term = w * S(c);
        auto it = out.find(m);
        if (it == out.end()) out.emplace(m, term);
        else {
          it->second = it->second + term;
          if (tautrel::is_zero(it->second)) out.erase(it);
        }
      }
      self(self, k, budget - (k - 1), w);
      ks.pop_back();
    }
  };
  rec(rec, 2, max_degree, S(1));
  return out;
}

}  // namespace tautrel
