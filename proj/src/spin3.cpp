#include "tautrel/spin3.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

#include "tautrel/enumerate.hpp"
#include "tautrel/strata.hpp"

namespace tautrel {

Rational fz_coefficient(int m) { return factorial(6 * m) / (factorial(2 * m) * factorial(3 * m)); }

std::vector<Rational> b_series(int which, int order) {
  if (which != 0 && which != 1) throw std::invalid_argument("B-series index must be 0 or 1");
  std::vector<Rational> out;
  for (int m = 0; m <= order; ++m) {
    Rational c = fz_coefficient(m);
    if (m % 2) c = -c;
    if (which == 1) {
      c *= Rational(1 + 6 * m, 1);
      c /= Rational(1 - 6 * m, 1);
    }
    out.push_back(c);
  }
  return out;
}

EdgeFactor::EdgeFactor(int order) : order_(order) {
  if (order < 0) throw std::invalid_argument("negative order");
  const int top = order + 1;
  const auto b0 = b_series(0, top), b1 = b_series(1, top);
  // Numerator zeta' + zeta'' - B0(zeta' z) zeta'' B1(zeta'' w) - zeta' B1(zeta' z) B0(zeta'' w).
  std::vector<std::vector<Cell>> num(static_cast<std::size_t>(top + 1), std::vector<Cell>(static_cast<std::size_t>(top + 1)));
  for (auto& row : num)
    for (auto& cell : row)
      for (auto& x : cell) x.fill(Rational(0));
  num[0][0][1][0] += 1;
  num[0][0][0][1] += 1;
  for (int p = 0; p <= top; ++p)
    for (int q = 0; p + q <= top; ++q) {
      num[p][q][p % 2][(q + 1) % 2] -= b0[p] * b1[q];
      num[p][q][(p + 1) % 2][q % 2] -= b1[p] * b0[q];
    }
  for (const auto& x : num[0][0])
    for (const auto& y : x)
      if (!is_zero(y)) throw std::logic_error("edge numerator has a constant term");
  c_.assign(static_cast<std::size_t>(order + 1), std::vector<Cell>(static_cast<std::size_t>(order + 1)));
  for (auto& row : c_)
    for (auto& cell : row)
      for (auto& x : cell) x.fill(Rational(0));
  for (int s = 0; s <= order; ++s) {
    for (int p = 0; p <= s; ++p)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          Rational x = num[p][s + 1 - p][i][j];
          if (p > 0) x -= c_[p - 1][s + 1 - p][i][j];
          c_[p][s - p][i][j] = x;
        }
    if (num[s + 1][0] != c_[s][0]) throw std::logic_error("B-series identity fails: edge numerator does not divide");
  }
}

namespace {

void check_a(int n, const std::vector<int>& a) {
  if (static_cast<int>(a.size()) != n) throw std::invalid_argument("A must have n entries");
  for (int x : a)
    if (x != 0 && x != 1) throw std::invalid_argument("entries of A must be 0 or 1");
}

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

/// kappa(T - T B0(zeta T)) by degree; the zeta exponent equals the degree.
const std::vector<std::vector<std::pair<KappaMonomial, Rational>>>& vertex_kappa(int max_degree) {
  static std::mutex mutex;
  static std::vector<std::vector<std::pair<KappaMonomial, Rational>>> cache;
  static int cached = -1;
  std::lock_guard lock(mutex);
  if (max_degree > cached) {
    std::vector<Rational> f(static_cast<std::size_t>(max_degree + 2), Rational(0));
    for (int k = 2; k <= max_degree + 1; ++k) {
      f[k] = -fz_coefficient(k - 1);
      if ((k - 1) % 2) f[k] = -f[k];
    }
    cache.assign(static_cast<std::size_t>(max_degree + 1), {});
    for (const auto& [m, c] : kappa_series(f, max_degree)) cache[kappa_degree(m)].emplace_back(m, c);
    cached = max_degree;
  }
  return cache;
}

}  // namespace

TautClass relation_class(int g, int n, const std::vector<int>& a, int d) {
  if (g < 0 || 2 * g - 2 + n <= 0) throw std::invalid_argument("unstable type (g, n)");
  check_a(n, a);
  TautClass out(g, n);
  const int top = 3 * g - 3 + n;
  if (d < 0 || d > top) return out;
  const auto& kap = vertex_kappa(d);
  const std::array<std::vector<Rational>, 2> bs{b_series(0, d), b_series(1, d)};
  const EdgeFactor delta(std::max(d - 1, 0));

  for (const auto& gc : stable_graph_classes(g, n)) {
    const StableGraph& G = gc.graph;
    const int E = G.num_edges();
    if (E > d) continue;
    Rational weight = inverse_count(gc.aut_order);
    weight /= Rational(mpz_class(1) << G.h1());
    const int V = G.num_vertices();
    DecoratedGraph dec(G);
    std::vector<int> parity(static_cast<std::size_t>(V), 0), room(static_cast<std::size_t>(V));
    for (int v = 0; v < V; ++v) room[v] = G.vertex_dimension(v);
    std::vector<int> legs;
    for (int h = 0; h < G.num_half_edges(); ++h)
      if (G.is_leg(h)) legs.push_back(h);
    const auto edges = G.edges();
    const int nl = static_cast<int>(legs.size()), ne = static_cast<int>(edges.size());

    auto rec = [&](auto&& self, int item, int budget, const Rational& coeff) -> void {
      if (item < nl) {
        const int h = legs[item];
        const int v = G.vertex_of(h);
        const int al = a[G.marking(h) - 1];
        for (int m = 0; m <= std::min(budget, room[v]); ++m) {
          const Rational& b = bs[al][m];
          if (is_zero(b)) continue;
          dec.psi[h] = m;
          room[v] -= m;
          parity[v] ^= (al + m) & 1;
          self(self, item + 1, budget - m, coeff * b);
          parity[v] ^= (al + m) & 1;
          room[v] += m;
        }
        dec.psi[h] = 0;
        return;
      }
      if (item < nl + ne) {
        const Edge& e = edges[item - nl];
        const int v1 = G.vertex_of(e.first), v2 = G.vertex_of(e.second);
        for (int p = 0; p <= budget; ++p)
          for (int q = 0; p + q <= budget; ++q) {
            room[v1] -= p;
            room[v2] -= q;
            if (room[v1] >= 0 && room[v2] >= 0) {
              dec.psi[e.first] = p;
              dec.psi[e.second] = q;
              for (int s1 = 0; s1 < 2; ++s1)
                for (int s2 = 0; s2 < 2; ++s2) {
                  const Rational& c = delta.coeff(p, q, s1, s2);
                  if (is_zero(c)) continue;
                  parity[v1] ^= s1;
                  parity[v2] ^= s2;
                  self(self, item + 1, budget - p - q, coeff * c);
                  parity[v1] ^= s1;
                  parity[v2] ^= s2;
                }
            }
            room[v1] += p;
            room[v2] += q;
          }
        dec.psi[e.first] = dec.psi[e.second] = 0;
        return;
      }
      const int v = item - nl - ne;
      if (v == V) {
        if (budget != 0) return;
        for (int w = 0; w < V; ++w)
          if (parity[w] != ((G.vertex_genus(w) - 1) & 1)) return;
        out.add(dec, coeff);
        return;
      }
      for (int e = 0; e <= std::min(budget, room[v]); ++e) {
        // The last vertex takes whatever degree is left.
        if (v == V - 1 && e != budget) continue;
        parity[v] ^= e & 1;
        for (const auto& [mono, c] : kap[e]) {
          dec.kappa[v] = mono;
          self(self, item + 1, budget - e, coeff * c);
        }
        dec.kappa[v].clear();
        parity[v] ^= e & 1;
      }
    };
    rec(rec, 0, d - E, weight);
  }
  return out;
}

std::vector<std::pair<std::vector<int>, int>> ptilde_enumerate(int g, int n) {
  if (g < 0 || 2 * g - 2 + n <= 0) throw std::invalid_argument("unstable type (g, n)");
  std::vector<std::pair<std::vector<int>, int>> out;
  const int top = 3 * g - 3 + n;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> a(static_cast<std::size_t>(n));
    int sum = 0;
    for (int i = 0; i < n; ++i) {
      a[i] = (mask >> (n - 1 - i)) & 1;
      sum += a[i];
    }
    for (int d = std::max(0, floor_div(g - 1 + sum, 3) + 1); d <= top; ++d) out.emplace_back(a, d);
  }
  return out;
}

TautClass extended_relation(int g, int n, const std::vector<int>& a, const std::vector<int>& sigma, int d) {
  if (static_cast<int>(a.size()) != n) throw std::invalid_argument("A must have n entries");
  std::vector<int> full = a;
  for (int s : sigma) full.push_back(s + 3);
  for (int x : full)
    if (x < 0 || x % 3 == 2) throw std::invalid_argument("entries must be 0 or 1 modulo 3");
  const int total = static_cast<int>(full.size());
  if (2 * g - 2 + n <= 0) throw std::invalid_argument("unstable type (g, n)");
  std::vector<int> residues;
  int shift = 0;
  for (int x : full) {
    residues.push_back(x % 3);
    shift += x / 3;
  }
  TautClass r = relation_class(g, total, residues, d - shift);
  for (int i = 0; i < total; ++i) r = times_psi_at(r, i + 1, full[i] / 3);
  for (std::size_t j = 0; j < sigma.size(); ++j) r = pushforward_forgetful(r);
  return r;
}

std::string relation_record(int g, int n, const std::vector<int>& a, int d, const TautClass& r) {
  std::ostringstream os;
  os << "R g=" << g << " n=" << n << " d=" << d << " A=";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << '\n' << r.to_text();
  return os.str();
}

std::optional<int> witten_degree(int g, const std::vector<int>& a) {
  int s = g - 1;
  for (int x : a) s += x;
  if (s < 0 || s % 3 != 0) return std::nullopt;
  return s / 3;
}

TautClass witten_class(int g, const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  check_a(n, a);
  const auto d = witten_degree(g, a);
  if (!d) return TautClass(g, n);
  Rational scale(mpz_class(1) << g);
  for (int i = 0; i < *d; ++i) scale /= 1728;
  return relation_class(g, n, a, *d) * scale;
}

namespace {

MatrixT<Rational> antidiagonal() {
  MatrixT<Rational> eta(2);
  eta(0, 1) = eta(1, 0) = 1;
  return eta;
}

}  // namespace

WittenCohFT::WittenCohFT() : CohFT<Rational>(2, antidiagonal()) {}

TautClass WittenCohFT::compute(int g, const std::vector<int>& args, int max_degree) const {
  return witten_class(g, args).truncated(max_degree);
}

A2Data a2_frobenius() {
  const PhiScalar phi = PhiScalar::monomial(4);
  A2Data a;
  auto& f = a.flat;
  f.dim = 2;
  f.eta = MatrixT<PhiScalar>(2);
  f.eta(0, 1) = f.eta(1, 0) = PhiScalar(1);
  f.unit = {PhiScalar(1), PhiScalar(0)};
  f.c.assign(2, std::vector<VectorT<PhiScalar>>(2, VectorT<PhiScalar>(2, PhiScalar(0))));
  f.c[0][0] = {PhiScalar(1), PhiScalar(0)};
  f.c[0][1] = f.c[1][0] = {PhiScalar(0), PhiScalar(1)};
  f.c[1][1] = {phi, PhiScalar(0)};
  f.euler = EulerData<PhiScalar>{{Rational(1), Rational(2, 3)}, {PhiScalar(0), phi * Rational(2)}, Rational(1, 3)};

  a.frame = MatrixT<PhiScalar>(2);
  a.frame(0, 0) = PhiScalar::monomial(1);
  a.frame(1, 1) = PhiScalar::monomial(-1);
  a.hat_product.assign(2, std::vector<VectorT<PhiScalar>>(2, VectorT<PhiScalar>(2, PhiScalar(0))));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        a.hat_product[i][j][k] = a.frame(i, i) * a.frame(j, j) * f.c[i][j][k] * a.frame(k, k).inverse();

  a.mu = MatrixT<PhiScalar>(2);
  a.mu(0, 0) = PhiScalar(Rational(-1, 6));
  a.mu(1, 1) = PhiScalar(Rational(1, 6));
  a.xi = MatrixT<PhiScalar>(2);
  a.xi(0, 1) = a.xi(1, 0) = PhiScalar::monomial(6, Rational(2));
  return a;
}

RMatrixT<PhiScalar> a2_rmatrix_recursion(int order) {
  const A2Data a2 = a2_frobenius();
  auto r = RMatrixT<PhiScalar>::identity(2, order);
  const PhiScalar inv6s = (PhiScalar(6) * a2.xi(0, 1)).inverse();
  for (int m = 0; m < order; ++m) {
    const auto& cur = r.coeffs[m];
    // The level-m equation fixes a - d and b - c of R_{m+1}; the level-(m+1)
    // equation forces (6m+5) a + (6m+7) d = 0 and (6m+5) b + (6m+7) c = 0.
    const PhiScalar x = cur(0, 1) * Rational(6 * m - 1) * inv6s;
    const PhiScalar y = cur(0, 0) * Rational(6 * m - 1) * inv6s;
    const Rational w(6 * m + 7, 12 * (m + 1));
    MatrixT<PhiScalar> next(2);
    next(0, 0) = x * w;
    next(1, 1) = next(0, 0) - x;
    next(0, 1) = y * w;
    next(1, 0) = next(0, 1) - y;
    const MatrixT<PhiScalar> lhs = next * a2.xi - a2.xi * next;
    const MatrixT<PhiScalar> rhs = (PhiScalar(m) * MatrixT<PhiScalar>::identity(2) + a2.mu) * cur;
    if (!(lhs == rhs)) throw std::logic_error("Teleman recursion has no solution at order " + std::to_string(m + 1));
    r.coeffs[m + 1] = next;
  }
  return r;
}

RMatrixT<PhiScalar> a2_rmatrix_closed(int order) {
  const auto b0 = b_series(0, order), b1 = b_series(1, order);
  auto r = RMatrixT<PhiScalar>::identity(2, order);
  Rational scale(1);
  for (int m = 0; m <= order; ++m) {
    auto entry = [&](const Rational& c) { return PhiScalar::monomial(-6 * m, c * scale); };
    MatrixT<PhiScalar> x(2);
    if (m % 2 == 0) {
      x(0, 0) = entry(b1[m]);
      x(1, 1) = entry(b0[m]);
    } else {
      x(0, 1) = entry(-b1[m]);
      x(1, 0) = entry(-b0[m]);
    }
    r.coeffs[m] = x;
    scale /= 1728;
  }
  return r;
}

RMatrixT<PhiScalar> to_flat_frame(const RMatrixT<PhiScalar>& hat) {
  const A2Data a2 = a2_frobenius();
  const MatrixT<PhiScalar> inv = a2.frame.inverse();
  RMatrixT<PhiScalar> out;
  for (const auto& m : hat.coeffs) out.coeffs.push_back(a2.frame * m * inv);
  return out;
}

CohFTPtr<PhiScalar> shifted_witten_action(int order) {
  const A2Data a2 = a2_frobenius();
  auto omega = std::make_shared<TQFT<PhiScalar>>(a2.flat);
  return unit_r_action(to_flat_frame(a2_rmatrix_closed(order)), CohFTPtr<PhiScalar>(omega), a2.flat.unit);
}

PhiTautClass shifted_witten_formula(int g, const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  check_a(n, a);
  int three_d = g - 1;
  for (int x : a) three_d += x;
  PhiTautClass out(g, n);
  Rational scale(mpz_class(1) << g);
  for (int d = 0; d <= 3 * g - 3 + n; ++d) {
    // phi^{(3/2)(D - d)} is phi^{(2 * 3D - 6d) / 4}.
    const PhiScalar c = PhiScalar::monomial(2 * three_d - 6 * d, scale);
    out.add(relation_class(g, n, a, d).map_coefficients<PhiScalar>([](const Rational& x) { return PhiScalar(x); }), c);
    scale /= 1728;
  }
  return out;
}

}  // namespace tautrel
