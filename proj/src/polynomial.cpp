#include "wkbdelta/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace wkbdelta {

long double to_long_double(const Rational& q) {
  const double hi = q.get_d();
  const Rational rest = q - Rational(hi);
  return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (sgn(base) == 0) throw std::domain_error("zero to a negative power");
    return pow(Rational(1) / base, -exponent);
  }
  Rational result(1);
  Rational b = base;
  unsigned long e = static_cast<unsigned long>(exponent);
  while (e > 0) {
    if (e & 1ul) result *= b;
    e >>= 1ul;
    if (e > 0) b *= b;
  }
  return result;
}

Rational binomial(const Rational& top, unsigned k) {
  Rational r(1);
  for (unsigned i = 0; i < k; ++i) {
    r *= top - i;
    r /= i + 1;
  }
  return r;
}

std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                          const RationalPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {RationalPolynomial{}, a};
  std::vector<Rational> quo(static_cast<std::size_t>(da - db + 1));
  const Rational& lead = b.leading();
  for (int k = da - db; k >= 0; --k) {
    const Rational q = rem[static_cast<std::size_t>(k + db)] / lead;
    quo[static_cast<std::size_t>(k)] = q;
    if (sgn(q) == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= q * b.coeff(static_cast<std::size_t>(j));
  }
  rem.resize(static_cast<std::size_t>(db));
  return {RationalPolynomial(std::move(quo)), RationalPolynomial(std::move(rem))};
}

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  const Rational lead = a.leading();
  a *= Rational(1) / lead;
  return a;
}

PrimitiveForm primitive_form(const RationalPolynomial& p) {
  if (p.is_zero()) return {Rational(0), RationalPolynomial{}};
  Integer den_lcm(1);
  for (const auto& c : p.coefficients()) {
    if (sgn(c) != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Integer num_gcd(0);
  for (const auto& c : p.coefficients()) {
    if (sgn(c) == 0) continue;
    Integer scaled = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational content(num_gcd, den_lcm);
  content.canonicalize();
  if (sgn(p.coeff(p.valuation())) < 0) content = -content;
  RationalPolynomial prim = p * (Rational(1) / content);
  return {content, prim};
}

RationalPolynomial series_inverse(const RationalPolynomial& a, std::size_t order) {
  if (sgn(a.coeff(0)) == 0) throw std::domain_error("series inverse needs a nonzero constant term");
  std::vector<Rational> b(order + 1);
  const Rational inv0 = Rational(1) / a.coeff(0);
  b[0] = inv0;
  for (std::size_t k = 1; k <= order; ++k) {
    Rational acc(0);
    for (std::size_t j = 1; j <= k; ++j) acc += a.coeff(j) * b[k - j];
    b[k] = -acc * inv0;
  }
  return RationalPolynomial(std::move(b));
}

RationalPolynomial series_power(const RationalPolynomial& a, const Rational& q, std::size_t order) {
  if (a.coeff(0) != 1) throw std::domain_error("series power needs a(0) = 1");
  // (1 + x)^q = sum_k binom(q, k) x^k with x = a - 1, x(0) = 0.
  const RationalPolynomial x = a - RationalPolynomial(Rational(1));
  RationalPolynomial result(Rational(1));
  RationalPolynomial xk(Rational(1));
  for (std::size_t k = 1; k <= order; ++k) {
    xk = (xk * x).truncated(order);
    if (xk.is_zero()) break;
    result += xk * binomial(q, static_cast<unsigned>(k));
  }
  return result.truncated(order);
}

std::string to_string(const RationalPolynomial& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Rational& c = p.coefficients()[k];
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    const Rational mag = abs(c);
    if (k == 0 || mag != 1) os << mag.get_str();
    if (k > 0) {
      if (mag != 1) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

}  // namespace wkbdelta
