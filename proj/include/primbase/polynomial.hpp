#pragma once

#include "primbase/errors.hpp"
#include "primbase/numeric.hpp"

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace primbase {

/// Dense univariate polynomial in q, coefficients in ascending degree.
template <class C> class Poly {
public:
  Poly() = default;
  Poly(C constant) : c_{std::move(constant)} { trim(); }
  explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly q() { return Poly(std::vector<C>{C(0), C(1)}); }
  static Poly monomial(const C& a, std::size_t k) {
    std::vector<C> v(k + 1, C(0));
    v[k] = a;
    return Poly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<C>& coeffs() const { return c_; }
  C coeff(std::size_t k) const { return k < c_.size() ? c_[k] : C(0); }
  C leading() const { return c_.empty() ? C(0) : c_.back(); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<C> r(std::max(a.c_.size(), b.c_.size()), C(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<C> r(std::max(a.c_.size(), b.c_.size()), C(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return Poly(std::move(r));
  }
  Poly operator-() const { return Poly() - *this; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<C> r(a.c_.size() + b.c_.size() - 1, C(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  template <class V> V eval(const V& x) const {
    V acc = V(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + V(c_[i]);
    return acc;
  }

  Poly pow(unsigned e) const {
    Poly r(C(1));
    for (unsigned i = 0; i < e; ++i) r *= *this;
    return r;
  }

  std::vector<std::string> coefficient_strings() const {
    std::vector<std::string> out;
    for (const auto& a : c_) out.push_back(to_string(a));
    return out;
  }

  /// e.g. "q^2 + 2q - 1"
  std::string pretty(const std::string& var = "q") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const C& a = c_[i];
      if (a == C(0)) continue;
      const bool neg = a < C(0);
      const C mag = neg ? C(-a) : a;
      if (first) os << (neg ? "-" : "");
      else os << (neg ? " - " : " + ");
      first = false;
      const std::string ms = to_string(mag);
      if (i == 0) os << ms;
      else {
        if (mag != C(1)) os << ms;
        os << var;
        if (i > 1) os << '^' << i;
      }
    }
    return os.str();
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == C(0)) c_.pop_back();
  }
  std::vector<C> c_;
};

using IntPolynomial = Poly<BigInt>;
using RatPolynomial = Poly<Rational>;

inline RatPolynomial to_rational(const IntPolynomial& p) {
  std::vector<Rational> v;
  for (const auto& a : p.coeffs()) v.emplace_back(a);
  return RatPolynomial(std::move(v));
}

/// Throws InputError if some coefficient is not an integer.
inline IntPolynomial to_integer(const RatPolynomial& p) {
  std::vector<BigInt> v;
  for (const auto& a : p.coeffs()) {
    if (boost::multiprecision::denominator(a) != 1)
      throw InputError("polynomial has non-integer coefficient " + to_string(a));
    v.push_back(boost::multiprecision::numerator(a));
  }
  return IntPolynomial(std::move(v));
}

/// Quotient and remainder over the rationals.
inline std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b) {
  if (b.is_zero()) throw InputError("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {RatPolynomial(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  const Rational lead = b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    const Rational f = rem[static_cast<std::size_t>(k + db)] / lead;
    quo[static_cast<std::size_t>(k)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= f * b.coeff(static_cast<std::size_t>(j));
  }
  rem.resize(static_cast<std::size_t>(db));
  return {RatPolynomial(std::move(quo)), RatPolynomial(std::move(rem))};
}

/// Monic gcd over the rationals.
inline RatPolynomial gcd(RatPolynomial a, RatPolynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  const Rational lead = a.leading();
  std::vector<Rational> v;
  for (const auto& c : a.coeffs()) v.push_back(c / lead);
  return RatPolynomial(std::move(v));
}

/// a / b, throwing InternalError unless the division is exact.
inline IntPolynomial exact_divide(const IntPolynomial& a, const IntPolynomial& b) {
  auto [q, r] = divmod(to_rational(a), to_rational(b));
  if (!r.is_zero()) throw InternalError("polynomial division is not exact");
  return to_integer(q);
}

/// [d]_q = 1 + q + ... + q^(d-1)
inline IntPolynomial q_integer(unsigned d) {
  return IntPolynomial(std::vector<BigInt>(d, BigInt(1)));
}

/// q^d - 1
inline IntPolynomial q_power_minus_one(unsigned d) {
  return IntPolynomial::monomial(1, d) - IntPolynomial(BigInt(1));
}

/// Multiplicity of q = 1 as a root.
inline int multiplicity_of_one(IntPolynomial p) {
  if (p.is_zero()) throw InputError("zero polynomial");
  const IntPolynomial lin(std::vector<BigInt>{BigInt(-1), BigInt(1)});
  int m = 0;
  while (p.eval(BigInt(1)) == 0) {
    p = exact_divide(p, lin);
    ++m;
  }
  return m;
}

} // namespace primbase
