#pragma once

#include <utility>
#include <vector>

#include "tautrel/strata.hpp"

namespace tautrel::testing {

inline StableGraph split_graph(std::vector<int> left, std::vector<int> right) {
  StableGraph g;
  g.add_vertex(0);
  g.add_vertex(0);
  for (int m : left) g.add_leg(0, m);
  for (int m : right) g.add_leg(1, m);
  g.add_edge(0, 1);
  return g.normalized();
}

inline TautClass delta(int a, int b) {
  std::vector<int> rest;
  for (int m = 1; m <= 4; ++m)
    if (m != a && m != b) rest.push_back(m);
  return boundary_class(split_graph({a, b}, rest));
}

/// 5 kappa_1 + sum over legs (7 if y, -5 if x) psi_i + (5 or -7) per boundary
/// divisor: 5 when it separates the y's from the x's or the y's are all on
/// one side with nothing else, -7 otherwise. Written out term by term.
inline TautClass expected_04(const std::vector<int>& a) {
  TautClass x = kappa_class(0, 4, {1}) * Rational(5);
  for (int i = 1; i <= 4; ++i) x += psi_class(0, 4, i) * Rational(a[i - 1] ? 7 : -5);
  for (auto [p, q] : {std::pair{1, 2}, {1, 3}, {1, 4}}) {
    int r = 0, s = 0;
    for (int m = 1; m <= 4; ++m)
      if (m != p && m != q) (r ? s : r) = m;
    const bool same_side = a[p - 1] == a[q - 1] && a[r - 1] == a[s - 1];
    const int ys = a[0] + a[1] + a[2] + a[3];
    x += delta(p, q) * Rational((ys == 0 || ys == 4 || same_side) ? 5 : -7);
  }
  return x;
}

inline std::vector<Rational> series_product(const std::vector<Rational>& a, const std::vector<Rational>& b, int order) {
  std::vector<Rational> out(static_cast<std::size_t>(order + 1), Rational(0));
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline std::vector<Rational> at_minus(std::vector<Rational> a) {
  for (std::size_t i = 1; i < a.size(); i += 2) a[i] = -a[i];
  return a;
}

}  // namespace tautrel::testing
