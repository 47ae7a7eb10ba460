#pragma once

#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tautrel/decorated_graph.hpp"
#include "tautrel/phi_scalar.hpp"
#include "tautrel/rational.hpp"

namespace tautrel {

/// A rational combination of decorated graphs, not yet canonicalized.
struct BasicTerm {
  DecoratedGraph graph;
  Rational coeff;
};
using BasicCombination = std::vector<BasicTerm>;

/// Element of the strata algebra S_{g,n} over the scalar ring S: a sparse map
/// from canonical decorated graphs to nonzero coefficients. Terms violating
/// the per-vertex degree bound are identified with zero when added.
template <class S>
class TautClassT {
 public:
  struct Entry {
    DecoratedGraph graph;  // canonical representative
    S coeff;
  };

  TautClassT() = default;
  TautClassT(int g, int n) : g_(g), n_(n) {}

  int genus() const { return g_; }
  int num_markings() const { return n_; }
  const std::map<std::string, Entry>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// The fundamental class [trivial graph, 1].
  static TautClassT unit(int g, int n) {
    StableGraph t;
    t.add_vertex(g);
    for (int m = 1; m <= n; ++m) t.add_leg(0, m);
    TautClassT c(g, n);
    c.add(DecoratedGraph(std::move(t)), S(1));
    return c;
  }

  static TautClassT basic(const DecoratedGraph& d) {
    TautClassT c(d.graph.genus(), d.graph.num_legs());
    c.add(d, S(1));
    return c;
  }

  void add(const DecoratedGraph& d, const S& c) {
    if (tautrel::is_zero(c) || !d.within_vertex_bounds()) return;
    if (d.graph.genus() != g_ || d.graph.num_legs() != n_)
      throw std::invalid_argument("decorated graph of the wrong type (g, n)");
    auto cf = canonicalize(d);
    add_canonical(cf.key, std::move(cf.representative), c);
  }

  /// Adds c times a rational combination.
  void add(const BasicCombination& comb, const S& c) {
    for (const auto& t : comb) add(t.graph, c * S(t.coeff));
  }

  void add(const TautClassT& o, const S& c) {
    check_same_type(o);
    for (const auto& [key, e] : o.terms_) add_canonical(key, e.graph, c * e.coeff);
  }

  TautClassT& operator+=(const TautClassT& o) {
    add(o, S(1));
    return *this;
  }
  TautClassT& operator-=(const TautClassT& o) {
    add(o, S(-1));
    return *this;
  }
  TautClassT& operator*=(const S& c) {
    if (tautrel::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& [key, e] : terms_) e.coeff = e.coeff * c;
    return *this;
  }
  friend TautClassT operator+(TautClassT a, const TautClassT& b) { return a += b; }
  friend TautClassT operator-(TautClassT a, const TautClassT& b) { return a -= b; }
  friend TautClassT operator*(TautClassT a, const S& c) { return a *= c; }
  friend TautClassT operator*(const S& c, TautClassT a) { return a *= c; }
  friend bool operator==(const TautClassT& a, const TautClassT& b) {
    if (a.g_ != b.g_ || a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
    for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
      if (ia->first != ib->first || !(ia->second.coeff == ib->second.coeff)) return false;
    return true;
  }

  /// Coefficient of the class of d (zero if absent).
  S coefficient(const DecoratedGraph& d) const {
    auto it = terms_.find(canonicalize(d).key);
    return it == terms_.end() ? S(0) : it->second.coeff;
  }

  /// The degree-d component.
  TautClassT part(int d) const {
    TautClassT out(g_, n_);
    for (const auto& [key, e] : terms_)
      if (e.graph.degree() == d) out.terms_.emplace(key, e);
    return out;
  }

  /// The part of degree at most d.
  TautClassT truncated(int d) const {
    TautClassT out(g_, n_);
    for (const auto& [key, e] : terms_)
      if (e.graph.degree() <= d) out.terms_.emplace(key, e);
    return out;
  }

  /// Degree of the single homogeneous component, or -1 if mixed or zero.
  int homogeneous_degree() const {
    int d = -1;
    for (const auto& [key, e] : terms_) {
      if (d == -1) d = e.graph.degree();
      else if (d != e.graph.degree()) return -1;
    }
    return d;
  }

  int max_degree() const {
    int d = -1;
    for (const auto& [key, e] : terms_) d = std::max(d, e.graph.degree());
    return d;
  }

  template <class T, class F>
  TautClassT<T> map_coefficients(F&& f) const {
    TautClassT<T> out(g_, n_);
    for (const auto& [key, e] : terms_) out.add_canonical(key, e.graph, f(e.coeff));
    return out;
  }

  /// One "<coeff> * <decorated-graph>" line per term, in key order.
  std::string to_text() const {
    std::ostringstream os;
    for (const auto& [key, e] : terms_) os << tautrel::to_string(e.coeff) << " * " << e.graph.to_text() << '\n';
    return os.str();
  }

  static TautClassT parse(std::string_view text, int g, int n) {
    TautClassT out(g, n);
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const auto cut = line.find(" * G ");
      if (cut == std::string::npos) throw std::invalid_argument("malformed class line: " + line);
      out.add(DecoratedGraph::parse(line.substr(cut + 3)), parse_scalar(line.substr(0, cut)));
    }
    return out;
  }

  void add_canonical(const std::string& key, const DecoratedGraph& rep, const S& c) {
    if (tautrel::is_zero(c)) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, Entry{rep, c});
      return;
    }
    it->second.coeff = it->second.coeff + c;
    if (tautrel::is_zero(it->second.coeff)) terms_.erase(it);
  }

 private:
  static S parse_scalar(const std::string& s) {
    if constexpr (std::is_same_v<S, Rational>) return parse_rational(s);
    else return S::parse(s);
  }

  void check_same_type(const TautClassT& o) const {
    if (o.g_ != g_ || o.n_ != n_) throw std::invalid_argument("classes on different moduli spaces");
  }

  int g_ = 0;
  int n_ = 0;
  std::map<std::string, Entry> terms_;
};

template <class S>
std::ostream& operator<<(std::ostream& os, const TautClassT<S>& x) {
  return os << "class on (" << x.genus() << ',' << x.num_markings() << ")\n" << x.to_text();
}

using TautClass = TautClassT<Rational>;
using PhiTautClass = TautClassT<PhiScalar>;

}  // namespace tautrel
