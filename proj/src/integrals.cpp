#include "tautrel/integrals.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace tautrel {

namespace {

using Key = std::pair<int, std::vector<int>>;

std::mutex psi_mutex;
std::map<Key, Rational> psi_memo;

Rational dvv(int g, std::vector<int> d);

Rational correlator(int g, std::vector<int> d) {
  const int n = static_cast<int>(d.size());
  if (g < 0 || 2 * g - 2 + n <= 0) return Rational(0);
  int sum = 0;
  for (int x : d) {
    if (x < 0) return Rational(0);
    sum += x;
  }
  if (sum != 3 * g - 3 + n) return Rational(0);
  std::sort(d.begin(), d.end(), std::greater<>());
  {
    std::lock_guard lock(psi_mutex);
    auto it = psi_memo.find({g, d});
    if (it != psi_memo.end()) return it->second;
  }
  Rational v = dvv(g, d);
  std::lock_guard lock(psi_mutex);
  psi_memo.emplace(Key{g, d}, v);
  return v;
}

/// d is sorted decreasingly and has the right dimension.
Rational dvv(int g, std::vector<int> d) {
  if (d[0] == 0) return (g == 0 && d.size() == 3) ? Rational(1) : Rational(0);
  if (g == 1 && d.size() == 1) return Rational(1, 24);
  const int k = d[0] - 1;
  std::vector<int> rest(d.begin() + 1, d.end());
  const int m = static_cast<int>(rest.size());
  Rational total(0);
  for (int j = 0; j < m; ++j) {
    std::vector<int> e = rest;
    e[j] += k;
    total += double_factorial_odd(k + rest[j] + 1) / double_factorial_odd(rest[j]) * correlator(g, e);
  }
  Rational split(0);
  for (int r = 0; r <= k - 1; ++r) {
    const int s = k - 1 - r;
    const Rational w = double_factorial_odd(r + 1) * double_factorial_odd(s + 1);
    std::vector<int> e = rest;
    e.push_back(r);
    e.push_back(s);
    Rational inner = correlator(g - 1, e);
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      std::vector<int> a{r}, b{s};
      for (int i = 0; i < m; ++i) (mask & (1u << i) ? a : b).push_back(rest[i]);
      for (int g1 = 0; g1 <= g; ++g1) {
        const Rational x = correlator(g1, a);
        if (is_zero(x)) continue;
        inner += x * correlator(g - g1, b);
      }
    }
    split += w * inner;
  }
  total += split / 2;
  return total / double_factorial_odd(k + 2);
}

std::mutex vertex_mutex;
std::map<std::tuple<int, std::vector<int>, KappaMonomial>, Rational> vertex_memo;

}  // namespace

Rational psi_integral(int g, const std::vector<int>& d) {
  if (g < 0 || 2 * g - 2 + static_cast<int>(d.size()) <= 0) throw std::invalid_argument("unstable type (g, n)");
  return correlator(g, d);
}

Rational vertex_integral(int g, const std::vector<int>& psi, const KappaMonomial& kappa) {
  const int n = static_cast<int>(psi.size());
  if (2 * g - 2 + n <= 0) throw std::invalid_argument("unstable type (g, n)");
  const int deg = std::accumulate(psi.begin(), psi.end(), 0) + kappa_degree(kappa);
  if (deg != 3 * g - 3 + n) return Rational(0);
  if (kappa.empty()) return correlator(g, psi);
  std::vector<int> p = psi;
  std::sort(p.begin(), p.end());
  KappaMonomial k = kappa;
  std::sort(k.begin(), k.end());
  {
    std::lock_guard lock(vertex_mutex);
    auto it = vertex_memo.find({g, p, k});
    if (it != vertex_memo.end()) return it->second;
  }
  // kappa_b = pi_*(psi_{n+1}^{b+1}) and pi^* kappa_a = kappa_a - psi_{n+1}^a.
  const int last = k.back();
  const KappaMonomial rest(k.begin(), k.end() - 1);
  const unsigned m = static_cast<unsigned>(rest.size());
  Rational total(0);
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    KappaMonomial kept;
    int e = last + 1;
    for (unsigned i = 0; i < m; ++i) {
      if (mask & (1u << i)) e += rest[i];
      else kept.push_back(rest[i]);
    }
    std::vector<int> q = p;
    q.push_back(e);
    const Rational v = vertex_integral(g, q, kept);
    if (__builtin_popcount(mask) % 2) total -= v;
    else total += v;
  }
  std::lock_guard lock(vertex_mutex);
  vertex_memo.emplace(std::make_tuple(g, p, k), total);
  return total;
}

Rational integrate_basic(const DecoratedGraph& x) {
  const auto& g = x.graph;
  Rational total(1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    std::vector<int> psi;
    for (int h : g.half_edges_at(v)) psi.push_back(x.psi[h]);
    total *= vertex_integral(g.vertex_genus(v), psi, x.kappa[v]);
    if (is_zero(total)) break;
  }
  return total;
}

Rational pair_basic(const DecoratedGraph& a, const DecoratedGraph& b) {
  const int dim = a.graph.dimension();
  if (a.degree() + b.degree() != dim) return Rational(0);
  static std::mutex mutex;
  static std::unordered_map<std::string, Rational> cache;
  std::string ka = canonicalize(a).key, kb = canonicalize(b).key;
  if (kb < ka) std::swap(ka, kb);
  const std::string key = ka + '#' + kb;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Rational total(0);
  for (const auto& t : product_terms(a, b)) total += t.coeff * integrate_basic(t.graph);
  std::lock_guard lock(mutex);
  cache.emplace(key, total);
  return total;
}

}  // namespace tautrel
