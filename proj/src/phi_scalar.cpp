#include "tautrel/phi_scalar.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tautrel {

PhiScalar PhiScalar::monomial(int quarters, const Rational& c) {
  PhiScalar s;
  s.add_term(quarters, c);
  return s;
}

Rational PhiScalar::coefficient(int quarters) const {
  auto it = terms_.find(quarters);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational PhiScalar::to_rational() const {
  if (!is_rational()) throw std::domain_error("phi-graded scalar is not rational: " + to_string());
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

void PhiScalar::add_term(int quarters, const Rational& c) {
  if (tautrel::is_zero(c)) return;
  auto [it, inserted] = terms_.emplace(quarters, c);
  if (!inserted) {
    it->second += c;
    if (tautrel::is_zero(it->second)) terms_.erase(it);
  }
}

PhiScalar& PhiScalar::operator+=(const PhiScalar& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

PhiScalar& PhiScalar::operator-=(const PhiScalar& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

PhiScalar operator*(const PhiScalar& a, const PhiScalar& b) {
  PhiScalar r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

PhiScalar& PhiScalar::operator*=(const PhiScalar& o) { return *this = *this * o; }

PhiScalar& PhiScalar::operator*=(const Rational& c) {
  if (tautrel::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

PhiScalar PhiScalar::operator-() const {
  PhiScalar r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

PhiScalar PhiScalar::inverse() const {
  if (!is_monomial()) throw std::domain_error("only phi-monomials are invertible: " + to_string());
  const auto& [e, c] = *terms_.begin();
  return monomial(-e, Rational(1) / c);
}

std::optional<Rational> rational_root(const Rational& x, int k) {
  if (sgn(x) < 0) return std::nullopt;
  mpz_class num, den;
  if (mpz_root(num.get_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(k)) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(k)) == 0) return std::nullopt;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::optional<Rational> PhiScalar::specialize(const Rational& phi) const {
  if (sgn(phi) <= 0) throw std::domain_error("phi must be positive");
  Rational total(0);
  for (const auto& [e, c] : terms_) {
    int g = std::gcd(std::abs(e), 4);
    if (e == 0) g = 4;
    const int root = 4 / g;
    const int power = e / g;
    auto base = rational_root(phi, root);
    if (!base) return std::nullopt;
    Rational p(1);
    const Rational factor = power >= 0 ? *base : Rational(1) / *base;
    for (int i = 0; i < std::abs(power); ++i) p *= factor;
    total += c * p;
  }
  return total;
}

namespace {

std::string exponent_string(int quarters) {
  Rational e(quarters, 4);
  e.canonicalize();
  return e.get_str();
}

}  // namespace

std::string PhiScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    if (e != 0) os << "*phi^(" << exponent_string(e) << ")";
  }
  return os.str();
}

PhiScalar PhiScalar::parse(std::string_view text) {
  std::string s(text);
  PhiScalar r;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(" + ", pos);
    std::string term = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    const auto star = term.find("*phi^(");
    if (star == std::string::npos) {
      r.add_term(0, parse_rational(term));
    } else {
      const auto close = term.find(')', star);
      if (close == std::string::npos) throw std::invalid_argument("malformed phi term: " + term);
      const Rational e = parse_rational(term.substr(star + 6, close - star - 6)) * 4;
      if (e.get_den() != 1) throw std::invalid_argument("phi exponent not a quarter-integer: " + term);
      r.add_term(static_cast<int>(e.get_num().get_si()), parse_rational(term.substr(0, star)));
    }
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  return r;
}

}  // namespace tautrel
