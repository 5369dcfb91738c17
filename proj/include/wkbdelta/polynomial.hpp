#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace wkbdelta {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(double v) { return v == 0.0; }
inline bool is_zero(long double v) { return v == 0.0L; }

// Nearest long double to q, via a double-double split.
long double to_long_double(const Rational& q);

template <class T>
T coefficient_cast(const Rational& q) {
  if constexpr (std::is_same_v<T, long double>) {
    return to_long_double(q);
  } else {
    return static_cast<T>(q.get_d());
  }
}

template <class T>
T coefficient_cast(const T& v) {
  return v;
}

template <class Coeff>
class Polynomial;

template <class C>
bool is_zero(const Polynomial<C>& p);

// Dense univariate polynomial, coefficients stored lowest power first with no trailing
// zeros. Nests: Polynomial<Polynomial<Rational>> is a bivariate polynomial.
template <class Coeff>
class Polynomial {
 public:
  using coefficient_type = Coeff;

  Polynomial() = default;
  Polynomial(const Coeff& constant) {  // NOLINT(google-explicit-constructor)
    if (!wkbdelta::is_zero(constant)) c_.push_back(constant);
  }
  Polynomial(std::initializer_list<Coeff> coeffs) : c_(coeffs) { trim(); }
  explicit Polynomial(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(const Coeff& c, std::size_t power) {
    if (wkbdelta::is_zero(c)) return {};
    std::vector<Coeff> v(power + 1, Coeff{});
    v[power] = c;
    return Polynomial(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  const std::vector<Coeff>& coefficients() const { return c_; }

  Coeff coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Coeff{}; }
  const Coeff& leading() const { return c_.back(); }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Coeff{});
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Coeff{});
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }

  Polynomial& operator*=(const Coeff& s) {
    for (auto& c : c_) c *= s;
    trim();
    return *this;
  }

  Polynomial& operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const Coeff& s) { return a *= s; }
  friend Polynomial operator*(const Coeff& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Coeff> out(a.c_.size() + b.c_.size() - 1, Coeff{});
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (wkbdelta::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  Polynomial pow(unsigned k) const {
    Polynomial result(std::vector<Coeff>{unit()});
    Polynomial base = *this;
    while (k > 0) {
      if (k & 1u) result *= base;
      k >>= 1u;
      if (k > 0) base *= base;
    }
    return result;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Coeff> out(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) out[k - 1] = c_[k] * Coeff(static_cast<long>(k));
    return Polynomial(std::move(out));
  }

  // Drops powers above `order`.
  Polynomial truncated(std::size_t order) const {
    if (c_.size() <= order + 1) return *this;
    return Polynomial(std::vector<Coeff>(c_.begin(), c_.begin() + static_cast<long>(order) + 1));
  }

  // Number of leading zero coefficients, i.e. the power of the variable that divides p.
  std::size_t valuation() const {
    std::size_t k = 0;
    while (k < c_.size() && wkbdelta::is_zero(c_[k])) ++k;
    return k;
  }

  // p / x^k; requires k <= valuation().
  Polynomial shifted_down(std::size_t k) const {
    if (k >= c_.size()) return {};
    return Polynomial(std::vector<Coeff>(c_.begin() + static_cast<long>(k), c_.end()));
  }

  // Horner evaluation in the scalar type of x.
  template <class T>
  T operator()(const T& x) const {
    T acc = T(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + coefficient_cast<T>(*it);
    return acc;
  }

 private:
  static Coeff unit() { return Coeff(1); }

  void trim() {
    while (!c_.empty() && wkbdelta::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<Coeff> c_;
};

template <class C>
bool is_zero(const Polynomial<C>& p) {
  return p.is_zero();
}

using RationalPolynomial = Polynomial<Rational>;

// Exact arithmetic helpers over Q[x].
Rational pow(const Rational& base, long exponent);
Rational binomial(const Rational& top, unsigned k);

std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                          const RationalPolynomial& b);
RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);  // monic, or zero

// p = content * primitive with integer, coprime coefficients and a positive lowest
// nonzero coefficient.
struct PrimitiveForm {
  Rational content;
  RationalPolynomial primitive;
};
PrimitiveForm primitive_form(const RationalPolynomial& p);

// Truncated power series over Q, powers 0..order.
RationalPolynomial series_inverse(const RationalPolynomial& a, std::size_t order);
// (a)^q for a(0) = 1 and rational q.
RationalPolynomial series_power(const RationalPolynomial& a, const Rational& q, std::size_t order);

std::string to_string(const RationalPolynomial& p, const std::string& var = "z");

}  // namespace wkbdelta
