#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "tautrel/phi_scalar.hpp"
#include "tautrel/rational.hpp"

namespace tautrel {

inline Rational scalar_inverse(const Rational& x) {
  if (is_zero(x)) throw std::domain_error("division by zero");
  return Rational(1) / x;
}
inline PhiScalar scalar_inverse(const PhiScalar& x) { return x.inverse(); }

template <class S>
using VectorT = std::vector<S>;

/// Dense square matrix; (i, j) is row i, column j. A matrix acts on column
/// vectors, so column j is the image of e_j.
template <class S>
class MatrixT {
 public:
  MatrixT() = default;
  explicit MatrixT(int n) : n_(n), a_(static_cast<std::size_t>(n * n), S(0)) {}

  static MatrixT identity(int n) {
    MatrixT m(n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  int size() const { return n_; }
  S& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  const S& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!tautrel::is_zero(x)) return false;
    return true;
  }

  MatrixT transpose() const {
    MatrixT t(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Gauss-Jordan elimination; throws if singular.
  MatrixT inverse() const {
    MatrixT a = *this, inv = identity(n_);
    for (int col = 0; col < n_; ++col) {
      int piv = col;
      while (piv < n_ && tautrel::is_zero(a(piv, col))) ++piv;
      if (piv == n_) throw std::domain_error("singular matrix");
      if (piv != col)
        for (int j = 0; j < n_; ++j) {
          std::swap(a(piv, j), a(col, j));
          std::swap(inv(piv, j), inv(col, j));
        }
      const S p = scalar_inverse(a(col, col));
      for (int j = 0; j < n_; ++j) {
        a(col, j) = a(col, j) * p;
        inv(col, j) = inv(col, j) * p;
      }
      for (int i = 0; i < n_; ++i) {
        if (i == col || tautrel::is_zero(a(i, col))) continue;
        const S f = a(i, col);
        for (int j = 0; j < n_; ++j) {
          a(i, j) = a(i, j) - f * a(col, j);
          inv(i, j) = inv(i, j) - f * inv(col, j);
        }
      }
    }
    return inv;
  }

  VectorT<S> apply(const VectorT<S>& v) const {
    VectorT<S> out(static_cast<std::size_t>(n_), S(0));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) out[i] = out[i] + (*this)(i, j) * v[j];
    return out;
  }

  friend MatrixT operator+(MatrixT a, const MatrixT& b) {
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] = a.a_[i] + b.a_[i];
    return a;
  }
  friend MatrixT operator-(MatrixT a, const MatrixT& b) {
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] = a.a_[i] - b.a_[i];
    return a;
  }
  friend MatrixT operator*(const MatrixT& a, const MatrixT& b) {
    MatrixT c(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        if (tautrel::is_zero(a(i, k))) continue;
        for (int j = 0; j < a.n_; ++j) c(i, j) = c(i, j) + a(i, k) * b(k, j);
      }
    return c;
  }
  friend MatrixT operator*(const S& s, MatrixT a) {
    for (auto& x : a.a_) x = s * x;
    return a;
  }
  friend bool operator==(const MatrixT& a, const MatrixT& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

 private:
  int n_ = 0;
  std::vector<S> a_;
};

/// eta-adjoint M* = eta^{-1} M^t eta, so that eta(Mu, v) = eta(u, M* v).
template <class S>
MatrixT<S> adjoint(const MatrixT<S>& m, const MatrixT<S>& eta) {
  return eta.inverse() * m.transpose() * eta;
}

/// End(V)-valued power series R_0 + R_1 z + ... + R_K z^K.
template <class S>
struct RMatrixT {
  std::vector<MatrixT<S>> coeffs;

  static RMatrixT identity(int dim, int order) {
    RMatrixT r;
    r.coeffs.assign(static_cast<std::size_t>(order + 1), MatrixT<S>(dim));
    r.coeffs[0] = MatrixT<S>::identity(dim);
    return r;
  }

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  int dim() const { return coeffs.empty() ? 0 : coeffs[0].size(); }

  /// R(z)^{-1}, which exists because R_0 is invertible.
  RMatrixT inverse() const {
    RMatrixT out;
    const MatrixT<S> i0 = coeffs[0].inverse();
    out.coeffs.push_back(i0);
    for (int k = 1; k <= order(); ++k) {
      MatrixT<S> acc(dim());
      for (int i = 1; i <= k; ++i) acc = acc + coeffs[i] * out.coeffs[k - i];
      out.coeffs.push_back(MatrixT<S>(dim()) - i0 * acc);
    }
    return out;
  }

  /// Product truncated at the smaller order.
  friend RMatrixT operator*(const RMatrixT& a, const RMatrixT& b) {
    RMatrixT out;
    const int k = std::min(a.order(), b.order());
    for (int m = 0; m <= k; ++m) {
      MatrixT<S> acc(a.dim());
      for (int i = 0; i <= m; ++i) acc = acc + a.coeffs[i] * b.coeffs[m - i];
      out.coeffs.push_back(std::move(acc));
    }
    return out;
  }

  friend bool operator==(const RMatrixT& a, const RMatrixT& b) { return a.coeffs == b.coeffs; }

  /// Whether R(z) R*(-z) = 1 holds through z^order, R* the eta-adjoint.
  bool is_symplectic(const MatrixT<S>& eta) const {
    const MatrixT<S> ei = eta.inverse();
    for (int m = 0; m <= order(); ++m) {
      MatrixT<S> acc(dim());
      for (int i = 0; i <= m; ++i) {
        MatrixT<S> t = coeffs[i] * ei * coeffs[m - i].transpose();
        acc = ((m - i) % 2) ? acc - t : acc + t;
      }
      if (!(acc == (m == 0 ? ei : MatrixT<S>(dim())))) return false;
    }
    return true;
  }
};

/// exp(A(z)) truncated at z^order, for A(z) = sum_{k>=1} a[k-1] z^k.
template <class S>
RMatrixT<S> rmatrix_exp(const std::vector<MatrixT<S>>& a, int dim, int order) {
  RMatrixT<S> out = RMatrixT<S>::identity(dim, order);
  RMatrixT<S> gen = RMatrixT<S>::identity(dim, order);
  gen.coeffs[0] = MatrixT<S>(dim);
  for (int k = 1; k <= order && k <= static_cast<int>(a.size()); ++k) gen.coeffs[k] = a[k - 1];
  RMatrixT<S> power = RMatrixT<S>::identity(dim, order);
  for (int j = 1; j <= order; ++j) {
    power = power * gen;
    const S w = S(Rational(1) / factorial(j));
    for (int k = 0; k <= order; ++k) out.coeffs[k] = out.coeffs[k] + w * power.coeffs[k];
  }
  return out;
}

/// V-valued series T_2 z^2 + ... + T_K z^K; coeffs[k] is T_k.
template <class S>
struct TVectorT {
  std::vector<VectorT<S>> coeffs;

  static TVectorT zero(int dim, int order) {
    TVectorT t;
    t.coeffs.assign(static_cast<std::size_t>(order + 1), VectorT<S>(static_cast<std::size_t>(dim), S(0)));
    return t;
  }

  int order() const { return static_cast<int>(coeffs.size()) - 1; }

  void validate() const {
    for (int k = 0; k < 2 && k <= order(); ++k)
      for (const auto& x : coeffs[k])
        if (!tautrel::is_zero(x)) throw std::invalid_argument("translation series must start at z^2");
  }

  friend TVectorT operator+(TVectorT a, const TVectorT& b) {
    if (a.coeffs.size() < b.coeffs.size()) a.coeffs.resize(b.coeffs.size(), VectorT<S>(b.coeffs[0].size(), S(0)));
    for (std::size_t k = 0; k < b.coeffs.size(); ++k)
      for (std::size_t i = 0; i < b.coeffs[k].size(); ++i) a.coeffs[k][i] = a.coeffs[k][i] + b.coeffs[k][i];
    return a;
  }
};

/// R(z) applied to T(z), truncated at the order of T.
template <class S>
TVectorT<S> operator*(const RMatrixT<S>& r, const TVectorT<S>& t) {
  TVectorT<S> out = TVectorT<S>::zero(r.dim(), t.order());
  for (int k = 0; k <= t.order(); ++k)
    for (int i = 0; i <= k && i <= r.order(); ++i) {
      const auto v = r.coeffs[i].apply(t.coeffs[k - i]);
      for (std::size_t j = 0; j < v.size(); ++j) out.coeffs[k][j] = out.coeffs[k][j] + v[j];
    }
  return out;
}

/// z (1 - R^{-1}(z) 1): the translation making R(T .) preserve the unit.
template <class S>
TVectorT<S> unit_translation(const RMatrixT<S>& r, const VectorT<S>& unit) {
  const RMatrixT<S> inv = r.inverse();
  TVectorT<S> t = TVectorT<S>::zero(r.dim(), r.order() + 1);
  for (int k = 1; k <= r.order(); ++k) {
    const auto v = inv.coeffs[k].apply(unit);
    for (std::size_t j = 0; j < v.size(); ++j) t.coeffs[k + 1][j] = S(0) - v[j];
  }
  return t;
}

/// Coefficients B[p][q] of (eta^{-1} - M(z) eta^{-1} M(w)^t) / (z + w), with
/// M = R^{-1}, for p + q <= max_degree. Entry (j, k) pairs e_j at z with e_k at w.
template <class S>
std::vector<std::vector<MatrixT<S>>> edge_bivector(const RMatrixT<S>& r, const MatrixT<S>& eta, int max_degree) {
  if (max_degree < 0) return {};
  if (r.order() < max_degree + 1) throw std::invalid_argument("R-matrix truncated below the edge degree");
  const int dim = r.dim();
  const RMatrixT<S> m = r.inverse();
  const MatrixT<S> ei = eta.inverse();
  const int top = max_degree + 1;
  auto numerator = [&](int p, int q) {
    MatrixT<S> x = MatrixT<S>(dim) - m.coeffs[p] * ei * m.coeffs[q].transpose();
    if (p == 0 && q == 0) x = x + ei;
    return x;
  };
  std::vector<std::vector<MatrixT<S>>> b(static_cast<std::size_t>(max_degree + 1),
                                         std::vector<MatrixT<S>>(static_cast<std::size_t>(max_degree + 1), MatrixT<S>(dim)));
  if (!numerator(0, 0).is_zero()) throw std::logic_error("R_0 is not the identity");
  for (int s = 0; s < top; ++s) {
    // N_{p, s+1-p} = B_{p-1, s+1-p} + B_{p, s-p}
    for (int p = 0; p <= s; ++p) {
      MatrixT<S> x = numerator(p, s + 1 - p);
      if (p > 0) x = x - b[p - 1][s + 1 - p];
      b[p][s - p] = x;
    }
    if (!(numerator(s + 1, 0) == b[s][0])) throw std::domain_error("R-matrix is not symplectic: edge series does not divide");
  }
  return b;
}

}  // namespace tautrel
