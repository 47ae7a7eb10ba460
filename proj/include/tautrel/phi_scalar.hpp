#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "tautrel/rational.hpp"

namespace tautrel {

/// Finite Laurent sum  sum_e c_e * phi^(e/4)  with rational coefficients.
///
/// Exponents are stored in quarters so that phi^(1/4) (the hat frame of the
/// A2 Frobenius manifold) is representable. Zero coefficients are never stored.
class PhiScalar {
 public:
  PhiScalar() = default;
  PhiScalar(const Rational& c) { add_term(0, c); }  // NOLINT: implicit by design of the ring
  PhiScalar(long c) : PhiScalar(Rational(c)) {}     // NOLINT
  PhiScalar(int c) : PhiScalar(Rational(c)) {}      // NOLINT

  /// c * phi^(quarters/4)
  static PhiScalar monomial(int quarters, const Rational& c = Rational(1));

  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
  const std::map<int, Rational>& terms() const { return terms_; }

  /// Coefficient of phi^(quarters/4).
  Rational coefficient(int quarters) const;
  /// The rational value; throws unless is_rational().
  Rational to_rational() const;

  void add_term(int quarters, const Rational& c);

  PhiScalar& operator+=(const PhiScalar& o);
  PhiScalar& operator-=(const PhiScalar& o);
  PhiScalar& operator*=(const PhiScalar& o);
  PhiScalar& operator*=(const Rational& c);
  PhiScalar operator-() const;

  friend PhiScalar operator+(PhiScalar a, const PhiScalar& b) { return a += b; }
  friend PhiScalar operator-(PhiScalar a, const PhiScalar& b) { return a -= b; }
  friend PhiScalar operator*(const PhiScalar& a, const PhiScalar& b);
  friend PhiScalar operator*(PhiScalar a, const Rational& c) { return a *= c; }
  friend PhiScalar operator*(const Rational& c, PhiScalar a) { return a *= c; }
  friend bool operator==(const PhiScalar& a, const PhiScalar& b) { return a.terms_ == b.terms_; }

  /// Inverse of a nonzero monomial; throws for anything else.
  PhiScalar inverse() const;

  /// Evaluates at a rational phi > 0. Every surviving exponent must give a
  /// rational power (integral exponent, or phi a perfect power).
  std::optional<Rational> specialize(const Rational& phi) const;

  std::string to_string() const;
  static PhiScalar parse(std::string_view text);

 private:
  std::map<int, Rational> terms_;
};

inline bool is_zero(const PhiScalar& s) { return s.is_zero(); }
inline std::string to_string(const PhiScalar& s) { return s.to_string(); }

/// Exact rational k-th root of a nonnegative rational, if it exists.
std::optional<Rational> rational_root(const Rational& x, int k);

}  // namespace tautrel
