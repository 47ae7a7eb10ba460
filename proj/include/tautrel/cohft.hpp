#pragma once

#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tautrel/enumerate.hpp"
#include "tautrel/integrals.hpp"
#include "tautrel/matrix_series.hpp"
#include "tautrel/strata.hpp"
#include "tautrel/taut_class.hpp"

namespace tautrel {

inline Rational inverse_count(std::uint64_t k) {
  Rational r(1);
  r /= static_cast<unsigned long>(k);
  return r;
}

/// Euler field E = sum_i (alpha_i t^i + beta_i) d_i in flat coordinates, with
/// conformal dimension delta.
template <class S>
struct EulerData {
  std::vector<Rational> alpha;
  VectorT<S> beta;
  Rational delta;
};

/// A Frobenius algebra (V, eta, 1, .) with e_i . e_j = sum_k c[i][j][k] e_k.
template <class S>
struct FrobeniusData {
  int dim = 0;
  MatrixT<S> eta;
  VectorT<S> unit;
  std::vector<std::vector<VectorT<S>>> c;
  std::optional<EulerData<S>> euler;

  VectorT<S> multiply(const VectorT<S>& a, const VectorT<S>& b) const {
    VectorT<S> out(static_cast<std::size_t>(dim), S(0));
    for (int i = 0; i < dim; ++i) {
      if (tautrel::is_zero(a[i])) continue;
      for (int j = 0; j < dim; ++j) {
        if (tautrel::is_zero(b[j])) continue;
        const S ab = a[i] * b[j];
        for (int k = 0; k < dim; ++k) out[k] = out[k] + ab * c[i][j][k];
      }
    }
    return out;
  }

  S pairing(const VectorT<S>& a, const VectorT<S>& b) const {
    S s(0);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) s = s + a[i] * eta(i, j) * b[j];
    return s;
  }

  VectorT<S> basis_vector(int i) const {
    VectorT<S> v(static_cast<std::size_t>(dim), S(0));
    v[i] = S(1);
    return v;
  }

  /// Human-readable list of failed invariants (empty when valid).
  std::vector<std::string> validate() const {
    std::vector<std::string> bad;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (!(eta(i, j) == eta(j, i))) bad.push_back("eta not symmetric");
    try {
      (void)eta.inverse();
    } catch (const std::domain_error&) {
      bad.push_back("eta singular");
    }
    for (int i = 0; i < dim; ++i) {
      const auto ei = basis_vector(i);
      if (!(multiply(unit, ei) == ei)) bad.push_back("unit fails at e" + std::to_string(i));
      for (int j = 0; j < dim; ++j) {
        const auto ej = basis_vector(j);
        if (!(multiply(ei, ej) == multiply(ej, ei))) bad.push_back("product not commutative");
        for (int k = 0; k < dim; ++k) {
          const auto ek = basis_vector(k);
          if (!(multiply(multiply(ei, ej), ek) == multiply(ei, multiply(ej, ek)))) bad.push_back("product not associative");
          if (!(pairing(multiply(ei, ej), ek) == pairing(ei, multiply(ej, ek)))) bad.push_back("eta not invariant");
        }
      }
    }
    if (euler) {
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          if (!tautrel::is_zero(eta(i, j)) && euler->alpha[i] + euler->alpha[j] != 2 - euler->delta)
            bad.push_back("eta is not an eigenform of the Euler field");
      for (int i = 0; i < dim; ++i)
        if (!tautrel::is_zero(unit[i]) && euler->alpha[i] != 1) bad.push_back("unit is not an eigenvector of the Euler field");
    }
    return bad;
  }
};

/// Multiplies by psi_marking^power (a decoration on the leg's half-edge).
template <class S>
TautClassT<S> times_psi_at(const TautClassT<S>& x, int marking, int power) {
  if (power == 0) return x;
  TautClassT<S> out(x.genus(), x.num_markings());
  for (const auto& [k, e] : x.terms()) {
    DecoratedGraph d = e.graph;
    d.psi[d.graph.leg_with_marking(marking)] += power;
    out.add(d, e.coeff);
  }
  return out;
}

/// Calls f(parts, coeff) for every choice of one term per class whose
/// degrees add up to at most max_degree.
template <class S, class F>
void for_each_term_product(const std::vector<const TautClassT<S>*>& classes, const S& coeff, int max_degree, F&& f) {
  std::vector<DecoratedGraph> parts(classes.size());
  auto rec = [&](auto&& self, std::size_t i, const S& c, int room) -> void {
    if (i == classes.size()) return f(parts, c);
    for (const auto& [k, e] : classes[i]->terms()) {
      const int d = e.graph.degree();
      if (d > room) continue;
      parts[i] = e.graph;
      self(self, i + 1, c * e.coeff, room - d);
    }
  };
  rec(rec, 0, coeff, max_degree);
}

/// Non-decreasing index tuples of length n over {0, ..., dim - 1}.
inline std::vector<std::vector<int>> sorted_tuples(int dim, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(static_cast<std::size_t>(n));
  auto rec = [&](auto&& self, int i, int lo) -> void {
    if (i == n) return out.push_back(t);
    for (int a = lo; a < dim; ++a) {
      t[i] = a;
      self(self, i + 1, a);
    }
  };
  rec(rec, 0, 0);
  return out;
}

/// Stable (g, n) with 3g - 3 + n <= max_dim, ordered by genus then n.
inline std::vector<std::pair<int, int>> stable_types(int max_dim) {
  std::vector<std::pair<int, int>> out;
  for (int g = 0; 3 * g - 3 <= max_dim; ++g)
    for (int n = 0; 3 * g - 3 + n <= max_dim; ++n)
      if (2 * g - 2 + n > 0) out.emplace_back(g, n);
  return out;
}

/// A cohomological field theory on V = S^dim, evaluated on basis vectors.
/// Values are computed on demand and memoized per sorted argument tuple;
/// other orderings are obtained by relabelling markings.
template <class S>
class CohFT {
 public:
  CohFT(int dim, MatrixT<S> eta) : dim_(dim), eta_(std::move(eta)), eta_inv_(eta_.inverse()) {}
  virtual ~CohFT() = default;
  CohFT(const CohFT&) = delete;
  CohFT& operator=(const CohFT&) = delete;

  int dim() const { return dim_; }
  const MatrixT<S>& eta() const { return eta_; }
  const MatrixT<S>& eta_inverse() const { return eta_inv_; }

  /// Omega_{g,n}(e_{args[0]} x ... x e_{args[n-1]}), truncated at
  /// max_degree when that is nonnegative.
  TautClassT<S> evaluate(int g, const std::vector<int>& args, int max_degree = -1) const {
    const int n = static_cast<int>(args.size());
    if (g < 0 || 2 * g - 2 + n <= 0) throw std::invalid_argument("unstable type (g, n)");
    for (int a : args)
      if (a < 0 || a >= dim_) throw std::invalid_argument("argument index out of range");
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return args[x] < args[y]; });
    std::vector<int> sorted(static_cast<std::size_t>(n));
    bool identity = true;
    for (int i = 0; i < n; ++i) {
      sorted[i] = args[order[i]];
      identity = identity && order[i] == i;
    }
    TautClassT<S> value = evaluate_sorted(g, sorted, max_degree);
    if (identity) return value;
    // Marking i+1 of the sorted evaluation is original marking order[i]+1.
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[i] = order[i] + 1;
    return relabel_markings(value, perm);
  }

  /// The value for a non-decreasing argument tuple.
  TautClassT<S> evaluate_sorted(int g, const std::vector<int>& sorted, int max_degree = -1) const {
    const int top = 3 * g - 3 + static_cast<int>(sorted.size());
    if (max_degree < 0 || max_degree > top) max_degree = top;
    const auto key = std::make_pair(g, sorted);
    {
      std::lock_guard lock(mutex_);
      auto it = memo_.find(key);
      if (it != memo_.end() && it->second.first >= max_degree)
        return it->second.first == max_degree ? it->second.second : it->second.second.truncated(max_degree);
    }
    TautClassT<S> value = compute(g, sorted, max_degree);
    std::lock_guard lock(mutex_);
    auto it = memo_.find(key);
    if (it == memo_.end()) memo_.emplace(key, std::make_pair(max_degree, value));
    else if (it->second.first < max_degree) it->second = {max_degree, value};
    return value;
  }

 protected:
  /// The part of degree at most max_degree (0 <= max_degree <= 3g - 3 + n).
  virtual TautClassT<S> compute(int g, const std::vector<int>& sorted_args, int max_degree) const = 0;

  void forget_memo() {
    std::lock_guard lock(mutex_);
    memo_.clear();
  }

 private:
  int dim_;
  MatrixT<S> eta_;
  MatrixT<S> eta_inv_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, std::vector<int>>, std::pair<int, TautClassT<S>>> memo_;
};

template <class S>
using CohFTPtr = std::shared_ptr<const CohFT<S>>;

/// Degree-0 CohFT of a Frobenius algebra:
/// omega_{g,n}(a) = eps(e_{a_1} . ... . e_{a_n} . H^g), with eps(v) = eta(v, 1)
/// and H = sum eta^{jk} e_j . e_k the handle element. This is the caterpillar
/// decomposition: a chain of pairs of pants with g loops.
template <class S>
class TQFT : public CohFT<S> {
 public:
  explicit TQFT(FrobeniusData<S> data) : CohFT<S>(data.dim, data.eta), data_(std::move(data)) {
    const auto bad = data_.validate();
    if (!bad.empty()) throw std::invalid_argument("invalid Frobenius data: " + bad.front());
    handle_ = VectorT<S>(static_cast<std::size_t>(data_.dim), S(0));
    for (int j = 0; j < data_.dim; ++j)
      for (int k = 0; k < data_.dim; ++k) {
        const S w = this->eta_inverse()(j, k);
        if (tautrel::is_zero(w)) continue;
        const auto p = data_.multiply(data_.basis_vector(j), data_.basis_vector(k));
        for (int i = 0; i < data_.dim; ++i) handle_[i] = handle_[i] + w * p[i];
      }
  }

  const FrobeniusData<S>& data() const { return data_; }

  S scalar(int g, const std::vector<int>& args) const {
    VectorT<S> v = data_.unit;
    for (int a : args) v = data_.multiply(v, data_.basis_vector(a));
    for (int i = 0; i < g; ++i) v = data_.multiply(v, handle_);
    return data_.pairing(v, data_.unit);
  }

 protected:
  TautClassT<S> compute(int g, const std::vector<int>& args, int) const override {
    return TautClassT<S>::unit(g, static_cast<int>(args.size())) * scalar(g, args);
  }

 private:
  FrobeniusData<S> data_;
  VectorT<S> handle_;
};

/// R Omega: sum over stable graphs of 1/|Aut| times the contraction with
/// Omega at vertices, R^{-1}(psi) at legs and the edge bivector at edges.
template <class S>
class RAction : public CohFT<S> {
 public:
  RAction(RMatrixT<S> r, CohFTPtr<S> base)
      : CohFT<S>(base->dim(), base->eta()), r_(std::move(r)), inv_(r_.inverse()), base_(std::move(base)) {
    if (r_.dim() != this->dim()) throw std::invalid_argument("R-matrix of the wrong dimension");
    if (!r_.is_symplectic(this->eta())) throw std::invalid_argument("R-matrix is not symplectic");
  }

  const RMatrixT<S>& rmatrix() const { return r_; }

 protected:
  TautClassT<S> compute(int g, const std::vector<int>& args, int max_degree) const override {
    const int n = static_cast<int>(args.size());
    const int top = max_degree;
    if (r_.order() < top) throw std::invalid_argument("R-matrix truncated below 3g - 3 + n");
    const auto bivector = edge_bivector(r_, this->eta(), top - 1);
    const int dim = this->dim();
    TautClassT<S> out(g, n);

    for (const auto& gc : stable_graph_classes(g, n)) {
      const StableGraph& G = gc.graph;
      if (G.num_edges() > top) continue;
      const S weight = S(inverse_count(gc.aut_order));
      const int H = G.num_half_edges();
      std::vector<int> index(static_cast<std::size_t>(H), 0), power(static_cast<std::size_t>(H), 0);
      std::vector<int> room(static_cast<std::size_t>(G.num_vertices()));
      for (int v = 0; v < G.num_vertices(); ++v) room[v] = G.vertex_dimension(v);
      std::vector<int> legs;
      for (int h = 0; h < H; ++h)
        if (G.is_leg(h)) legs.push_back(h);
      const auto edges = G.edges();
      std::map<std::tuple<int, std::vector<int>, std::vector<int>, int>, TautClassT<S>> vertex_memo;

      int free_degree = 0;  // degree left for the vertex classes themselves
      auto vertex_value = [&](int v) -> const TautClassT<S>& {
        const auto hs = G.half_edges_at(v);
        std::vector<int> a, p;
        for (int h : hs) {
          a.push_back(index[h]);
          p.push_back(power[h]);
        }
        int used = 0;
        for (int x : p) used += x;
        const int cap = std::min(G.vertex_dimension(v) - used, free_degree);
        auto key = std::make_tuple(G.vertex_genus(v), a, p, cap);
        auto it = vertex_memo.find(key);
        if (it != vertex_memo.end()) return it->second;
        TautClassT<S> c = base_->evaluate(G.vertex_genus(v), a, cap);
        for (std::size_t i = 0; i < p.size(); ++i) c = times_psi_at(c, static_cast<int>(i) + 1, p[i]);
        return vertex_memo.emplace(std::move(key), std::move(c)).first->second;
      };

      auto leaf = [&](const S& coeff, int budget) {
        free_degree = budget;
        std::vector<const TautClassT<S>*> parts;
        for (int v = 0; v < G.num_vertices(); ++v) {
          const auto& c = vertex_value(v);
          if (c.is_zero()) return;
          parts.push_back(&c);
        }
        // The psi powers are already inside the vertex classes.
        for_each_term_product(parts, coeff, top - G.num_edges(), [&](const std::vector<DecoratedGraph>& ps, const S& c) {
          out.add(glue(G, ps).graph, c);
        });
      };

      const int nl = static_cast<int>(legs.size());
      auto rec = [&](auto&& self, int item, int budget, const S& coeff) -> void {
        if (item == nl + static_cast<int>(edges.size())) return leaf(coeff, budget);
        if (item < nl) {
          const int h = legs[item];
          const int v = G.vertex_of(h);
          const int a = args[G.marking(h) - 1];
          for (int k = 0; k <= std::min(budget, room[v]) && k <= inv_.order(); ++k)
            for (int j = 0; j < dim; ++j) {
              const S& m = inv_.coeffs[k](j, a);
              if (tautrel::is_zero(m)) continue;
              index[h] = j;
              power[h] = k;
              room[v] -= k;
              self(self, item + 1, budget - k, coeff * m);
              room[v] += k;
            }
          power[h] = 0;
          return;
        }
        const Edge& e = edges[item - nl];
        const int v1 = G.vertex_of(e.first), v2 = G.vertex_of(e.second);
        for (int p = 0; p <= budget; ++p)
          for (int q = 0; p + q <= budget; ++q) {
            room[v1] -= p;
            room[v2] -= q;
            if (room[v1] >= 0 && room[v2] >= 0) {
              const auto& b = bivector[p][q];
              for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k) {
                  if (tautrel::is_zero(b(j, k))) continue;
                  index[e.first] = j;
                  power[e.first] = p;
                  index[e.second] = k;
                  power[e.second] = q;
                  self(self, item + 1, budget - p - q, coeff * b(j, k));
                }
            }
            room[v1] += p;
            room[v2] += q;
          }
        power[e.first] = power[e.second] = 0;
      };
      // Each edge costs one degree by itself.
      rec(rec, 0, top - G.num_edges(), weight);
    }
    return out;
  }

 private:
  RMatrixT<S> r_;
  RMatrixT<S> inv_;
  CohFTPtr<S> base_;
};

/// T Omega = sum_m 1/m! p_{m*} Omega_{g,n+m}(..., T(psi_{n+1}), ..., T(psi_{n+m})).
template <class S>
class Translation : public CohFT<S> {
 public:
  Translation(TVectorT<S> t, CohFTPtr<S> base) : CohFT<S>(base->dim(), base->eta()), t_(std::move(t)), base_(std::move(base)) {
    t_.validate();
  }

  const TVectorT<S>& tvector() const { return t_; }

 protected:
  TautClassT<S> compute(int g, const std::vector<int>& args, int max_degree) const override {
    const int n = static_cast<int>(args.size());
    const int top = max_degree;
    TautClassT<S> out = base_->evaluate(g, args, top);
    // Multisets of (power k >= 2, index j) with sum (k - 1) <= top, weighted
    // by prod T_k[j] / prod multiplicity!.
    std::vector<std::pair<int, int>> chosen;
    auto rec = [&](auto&& self, int k0, int j0, int budget, const S& weight) -> void {
      for (int k = k0; k - 1 <= budget && k <= t_.order(); ++k)
        for (int j = (k == k0 ? j0 : 0); j < this->dim(); ++j) {
          const S& tk = t_.coeffs[k][j];
          if (tautrel::is_zero(tk)) continue;
          chosen.emplace_back(k, j);
          int mult = 0;
          for (const auto& c : chosen) mult += (c == std::make_pair(k, j));
          const S w = weight * tk * S(Rational(1, mult));
          // Pushing forward m times lowers the degree by m.
          std::vector<int> a = args;
          int raise = 0;
          for (const auto& c : chosen) {
            a.push_back(c.second);
            raise += c.first - 1;
          }
          TautClassT<S> x = base_->evaluate(g, a, top - raise);
          for (std::size_t i = 0; i < chosen.size(); ++i) x = times_psi_at(x, n + 1 + static_cast<int>(i), chosen[i].first);
          for (std::size_t i = 0; i < chosen.size() && !x.is_zero(); ++i) x = pushforward_forgetful(x);
          if (!x.is_zero()) out.add(x, w);
          self(self, k, j, budget - (k - 1), w);
          chosen.pop_back();
        }
    };
    rec(rec, 2, 0, top, S(1));
    return out;
  }

 private:
  TVectorT<S> t_;
  CohFTPtr<S> base_;
};

/// The unit-preserving action R.Omega = R(T Omega), T(z) = z (1 - R^{-1}(z) 1).
template <class S>
CohFTPtr<S> unit_r_action(const RMatrixT<S>& r, CohFTPtr<S> base, const VectorT<S>& unit) {
  auto translated = std::make_shared<Translation<S>>(unit_translation(r, unit), std::move(base));
  return std::make_shared<RAction<S>>(r, std::move(translated));
}

/// A materialized CohFT: values stored for every stable (g, n) with
/// 3g - 3 + n <= max_dim and every sorted argument tuple. Evaluating past
/// the bound throws std::out_of_range.
template <class S>
class CohFTTable : public CohFT<S> {
 public:
  CohFTTable(int dim, MatrixT<S> eta, int max_dim) : CohFT<S>(dim, std::move(eta)), max_dim_(max_dim) {}

  int max_dim() const { return max_dim_; }
  const std::map<std::pair<int, std::vector<int>>, TautClassT<S>>& entries() const { return entries_; }

  /// Replaces one entry (sorted arguments).
  void set(int g, const std::vector<int>& sorted_args, TautClassT<S> value) {
    entries_[{g, sorted_args}] = std::move(value);
    this->forget_memo();
  }

  /// "(g,n) [a1,...,an] :" followed by the class lines and a blank line.
  std::string to_text() const {
    std::ostringstream os;
    os << "table dim=" << this->dim() << " max_dim=" << max_dim_ << '\n';
    for (const auto& [key, value] : entries_) {
      os << '(' << key.first << ',' << key.second.size() << ") [";
      for (std::size_t i = 0; i < key.second.size(); ++i) os << (i ? "," : "") << key.second[i];
      os << "] :\n" << value.to_text() << '\n';
    }
    return os.str();
  }

  /// Inverse of to_text; eta is not serialized and must be supplied.
  static std::shared_ptr<CohFTTable> parse(const std::string& text, const MatrixT<S>& eta) {
    std::istringstream is(text);
    std::string line;
    int dim = 0, max_dim = 0;
    if (!std::getline(is, line) || std::sscanf(line.c_str(), "table dim=%d max_dim=%d", &dim, &max_dim) != 2)
      throw std::invalid_argument("malformed table header");
    auto table = std::make_shared<CohFTTable>(dim, eta, max_dim);
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      int g = 0, n = 0;
      const auto open = line.find('['), close = line.find(']');
      if (std::sscanf(line.c_str(), "(%d,%d)", &g, &n) != 2 || open == std::string::npos || close == std::string::npos)
        throw std::invalid_argument("malformed table record: " + line);
      std::vector<int> args;
      std::istringstream as(line.substr(open + 1, close - open - 1));
      for (std::string tok; std::getline(as, tok, ',');) args.push_back(std::stoi(tok));
      if (static_cast<int>(args.size()) != n) throw std::invalid_argument("argument count mismatch: " + line);
      std::string body;
      while (std::getline(is, line) && !line.empty()) body += line + '\n';
      table->entries_[{g, args}] = TautClassT<S>::parse(body, g, n);
    }
    return table;
  }

 protected:
  TautClassT<S> compute(int g, const std::vector<int>& args, int max_degree) const override {
    auto it = entries_.find({g, args});
    if (it == entries_.end()) throw std::out_of_range("CohFT table evaluated past its bound");
    return it->second.truncated(max_degree);
  }

 private:
  int max_dim_;
  std::map<std::pair<int, std::vector<int>>, TautClassT<S>> entries_;
};

template <class S>
std::shared_ptr<CohFTTable<S>> materialize(const CohFT<S>& omega, int max_dim) {
  auto table = std::make_shared<CohFTTable<S>>(omega.dim(), omega.eta(), max_dim);
  for (const auto& [g, n] : stable_types(max_dim))
    for (const auto& args : sorted_tuples(omega.dim(), n)) table->set(g, args, omega.evaluate_sorted(g, args));
  return table;
}

// ---------------------------------------------------------------------------
// Axioms.

struct CheckReport {
  int checks = 0;
  /// Equalities that hold after pairing with every complementary basis class
  /// but not term by term in the strata algebra.
  int certified_only = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline std::string describe(int g, const std::vector<int>& args) {
  std::string s = "(" + std::to_string(g) + "," + std::to_string(args.size()) + ") [";
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + std::to_string(args[i]);
  return s + "]";
}

/// 1 if a == b term by term, 2 if a - b pairs to zero in every degree, 0 otherwise.
template <class S>
int compare_classes(const TautClassT<S>& a, const TautClassT<S>& b) {
  if (a == b) return 1;
  const TautClassT<S> diff = a - b;
  for (int d = 0; d <= diff.max_degree(); ++d) {
    const auto part = diff.part(d);
    if (!part.is_zero() && !certify_zero(part, d).certified) return 0;
  }
  return 2;
}

template <class S>
bool operator==(const FactorClassT<S>& a, const FactorClassT<S>& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (auto ia = a.terms.begin(), ib = b.terms.begin(); ia != a.terms.end(); ++ia, ++ib)
    if (ia->first != ib->first || !(ia->second.coeff == ib->second.coeff)) return false;
  return true;
}

/// Same contract as compare_classes for classes on prod_w M_{g(w), n(w)}: the
/// difference is certified by pairing each multidegree part against every
/// product of complementary basis classes.
template <class S>
int compare_factor_classes(const FactorClassT<S>& a, const FactorClassT<S>& b) {
  if (a == b) return 1;
  const StableGraph& phi = a.phi;
  const int nv = phi.num_vertices();
  std::map<std::vector<int>, std::vector<std::pair<const std::vector<DecoratedGraph>*, S>>> parts;
  auto collect = [&](const FactorClassT<S>& x, const S& sign) {
    for (const auto& [key, e] : x.terms) {
      std::vector<int> degrees;
      for (const auto& f : e.factors) degrees.push_back(f.degree());
      parts[degrees].emplace_back(&e.factors, sign * e.coeff);
    }
  };
  collect(a, S(1));
  collect(b, S(-1));
  for (const auto& [degrees, terms] : parts) {
    std::vector<const std::vector<DecoratedGraph>*> comp;
    for (int w = 0; w < nv; ++w) {
      const int gw = phi.vertex_genus(w), nw = phi.valence(w);
      comp.push_back(&basis(gw, nw, 3 * gw - 3 + nw - degrees[w]));
    }
    std::vector<std::size_t> idx(static_cast<std::size_t>(nv), 0);
    for (;;) {
      bool empty = false;
      for (int w = 0; w < nv; ++w) empty = empty || comp[w]->empty();
      if (empty) break;
      S total(0);
      for (const auto& [factors, c] : terms) {
        Rational p(1);
        for (int w = 0; w < nv && !tautrel::is_zero(p); ++w) p *= pair_basic((*factors)[w], (*comp[w])[idx[w]]);
        total = total + c * S(p);
      }
      if (!tautrel::is_zero(total)) return 0;
      int w = 0;
      for (; w < nv; ++w) {
        if (++idx[w] < comp[w]->size()) break;
        idx[w] = 0;
      }
      if (w == nv) break;
    }
  }
  return 2;
}

/// sum eta^{jk} prod_w Omega_{g_w}(args at w) over the single edge of phi.
template <class S>
FactorClassT<S> boundary_contraction(const CohFT<S>& omega, const std::vector<int>& args, const StableGraph& phi) {
  FactorClassT<S> out{phi, {}};
  const Edge e = phi.edges().at(0);
  for (int j = 0; j < omega.dim(); ++j)
    for (int k = 0; k < omega.dim(); ++k) {
      const S w = omega.eta_inverse()(j, k);
      if (tautrel::is_zero(w)) continue;
      std::vector<TautClassT<S>> values;
      for (int v = 0; v < phi.num_vertices(); ++v) {
        std::vector<int> a;
        for (int h : phi.half_edges_at(v)) a.push_back(phi.is_leg(h) ? args[phi.marking(h) - 1] : (h == e.first ? j : k));
        values.push_back(omega.evaluate(phi.vertex_genus(v), a));
      }
      std::vector<const TautClassT<S>*> ptrs;
      for (const auto& x : values) ptrs.push_back(&x);
      for_each_term_product(ptrs, w, phi.dimension(), [&](const std::vector<DecoratedGraph>& ps, const S& c) { out.add(ps, c); });
    }
  return out;
}

/// Checks at each listed (g, n) and every sorted argument tuple:
/// (i) invariance under transpositions of equal arguments;
/// (ii) the pullback to every one-edge boundary stratum equals the contraction;
/// (iii) if a unit is given, Omega(..., 1) = p^* Omega(...) and
///       Omega_{0,3}(a, b, 1) = eta(a, b).
template <class S>
CheckReport check_axioms(const CohFT<S>& omega, const std::vector<std::pair<int, int>>& types,
                         const std::optional<VectorT<S>>& unit = std::nullopt, bool gluing = true) {
  CheckReport rep;
  for (const auto& [g, n] : types) {
    for (const auto& args : sorted_tuples(omega.dim(), n)) {
      const TautClassT<S> value = omega.evaluate(g, args);
      for (int i = 0; i + 1 < n; ++i) {
        if (args[i] != args[i + 1]) continue;
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int m = 0; m < n; ++m) perm[m] = m + 1;
        std::swap(perm[i], perm[i + 1]);
        ++rep.checks;
        if (!(relabel_markings(value, perm) == value)) rep.violations.push_back("symmetry " + describe(g, args));
      }
      if (gluing)
        for (const auto& phi : one_edge_graphs(g, n)) {
          ++rep.checks;
          const int verdict = compare_factor_classes(pullback_boundary(value, phi), boundary_contraction(omega, args, phi));
          if (verdict == 0) rep.violations.push_back("gluing " + describe(g, args) + " along " + phi.to_text());
          if (verdict == 2) ++rep.certified_only;
        }
    }
    if (!unit || n < 1) continue;
    for (const auto& a : sorted_tuples(omega.dim(), n - 1)) {
      TautClassT<S> with_unit(g, n);
      std::vector<int> b = a;
      b.push_back(0);
      for (int j = 0; j < omega.dim(); ++j) {
        if (tautrel::is_zero((*unit)[j])) continue;
        b.back() = j;
        with_unit.add(omega.evaluate(g, b), (*unit)[j]);
      }
      TautClassT<S> expected(g, n);
      if (g == 0 && n == 3) expected = TautClassT<S>::unit(0, 3) * omega.eta()(a[0], a[1]);
      else if (2 * g - 2 + n - 1 > 0) expected = pullback_forgetful(omega.evaluate(g, a));
      else continue;
      ++rep.checks;
      const int verdict = compare_classes(with_unit, expected);
      if (verdict == 0) rep.violations.push_back("unit " + describe(g, a));
      if (verdict == 2) ++rep.certified_only;
    }
  }
  return rep;
}

template <class S>
const EulerData<S>& require_euler(const FrobeniusData<S>& f) {
  if (!f.euler) throw std::invalid_argument("Frobenius data has no Euler field");
  return *f.euler;
}

/// (E.Omega)_{g,n}(args) = (deg + sum alpha_{a_l}) Omega + p_* Omega_{g,n+1}(args, beta).
template <class S>
TautClassT<S> euler_action(const CohFT<S>& omega, const EulerData<S>& e, int g, const std::vector<int>& args) {
  const int n = static_cast<int>(args.size());
  Rational shift(0);
  for (int a : args) shift += e.alpha.at(a);
  const TautClassT<S> value = omega.evaluate(g, args);
  TautClassT<S> out(g, n);
  for (int d = 0; d <= value.max_degree(); ++d) out.add(value.part(d), S(shift + d));
  std::vector<int> a = args;
  a.push_back(0);
  for (int i = 0; i < omega.dim(); ++i) {
    if (tautrel::is_zero(e.beta.at(i))) continue;
    a.back() = i;
    out.add(pushforward_forgetful(omega.evaluate(g, a)), e.beta[i]);
  }
  return out;
}

/// Compares E.Omega with ((g - 1) delta + n) Omega for every sorted tuple.
template <class S>
CheckReport check_homogeneity(const CohFT<S>& omega, const EulerData<S>& e, const std::vector<std::pair<int, int>>& types) {
  CheckReport rep;
  for (const auto& [g, n] : types)
    for (const auto& args : sorted_tuples(omega.dim(), n)) {
      ++rep.checks;
      const Rational lambda = (g - 1) * e.delta + n;
      const int verdict = compare_classes(euler_action(omega, e, g, args), omega.evaluate(g, args) * S(lambda));
      if (verdict == 0) rep.violations.push_back("homogeneity " + describe(g, args));
      if (verdict == 2) ++rep.certified_only;
    }
  return rep;
}

}  // namespace tautrel
