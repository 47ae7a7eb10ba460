#pragma once

#include <string>
#include <vector>

#include "tautrel/decorated_graph.hpp"
#include "tautrel/rational.hpp"
#include "tautrel/strata.hpp"
#include "tautrel/taut_class.hpp"

namespace tautrel {

/// <tau_{d_1} ... tau_{d_n}>_g by the DVV recursion, normalized by
/// <tau_0^3>_0 = 1 and <tau_1>_1 = 1/24. Throws if 2g - 2 + n <= 0.
Rational psi_integral(int g, const std::vector<int>& d);

/// Integral over M_{g,n} of prod psi_i^{d_i} times a kappa monomial.
Rational vertex_integral(int g, const std::vector<int>& psi, const KappaMonomial& kappa);

/// Integral of the pushforward xi_Gamma_*(gamma): product of vertex integrals.
Rational integrate_basic(const DecoratedGraph& x);

/// Integral of [a] . [b] over M_{g,n} (zero unless the degrees add up to the dimension).
Rational pair_basic(const DecoratedGraph& a, const DecoratedGraph& b);

/// Integral of a class of top degree 3g - 3 + n; throws on other degrees.
template <class S>
S integrate(const TautClassT<S>& x) {
  const int dim = 3 * x.genus() - 3 + x.num_markings();
  S total(0);
  for (const auto& [k, e] : x.terms()) {
    if (e.graph.degree() != dim) throw std::invalid_argument("integrate needs a class of top degree");
    total = total + e.coeff * S(integrate_basic(e.graph));
  }
  return total;
}

/// Pairings of x against the basis of complementary degree. This is numerical
/// evidence that x is a relation, not a proof.
template <class S>
struct Certification {
  int g = 0, n = 0, d = 0;
  std::vector<S> pairings;
  bool certified = true;
  int first_failure = -1;

  /// "CERTIFIED g n d id" or "FAILED g n d id basis=<i>".
  std::string summary(const std::string& id) const {
    std::string head = std::to_string(g) + ' ' + std::to_string(n) + ' ' + std::to_string(d) + ' ' + id;
    if (certified) return "CERTIFIED " + head;
    return "FAILED " + head + " basis=" + std::to_string(first_failure);
  }
};

/// Certifies a homogeneous class of degree d (the zero class counts as any degree).
template <class S>
Certification<S> certify_zero(const TautClassT<S>& x, int d) {
  Certification<S> out;
  out.g = x.genus();
  out.n = x.num_markings();
  out.d = d;
  const int dim = 3 * out.g - 3 + out.n;
  for (const auto& [k, e] : x.terms())
    if (e.graph.degree() != d) throw std::invalid_argument("certify_zero needs a homogeneous class");
  const auto& comp = basis(out.g, out.n, dim - d);
  for (std::size_t j = 0; j < comp.size(); ++j) {
    S p(0);
    for (const auto& [k, e] : x.terms()) p = p + e.coeff * S(pair_basic(e.graph, comp[j]));
    if (!tautrel::is_zero(p) && out.certified) {
      out.certified = false;
      out.first_failure = static_cast<int>(j);
    }
    out.pairings.push_back(std::move(p));
  }
  return out;
}

template <class S>
Certification<S> certify_zero(const TautClassT<S>& x) {
  const int d = x.homogeneous_degree();
  if (d < 0 && !x.is_zero()) throw std::invalid_argument("certify_zero needs a homogeneous class");
  return certify_zero(x, d < 0 ? 0 : d);
}

}  // namespace tautrel
