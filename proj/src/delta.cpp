#include "wkbdelta/delta.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "wkbdelta/errors.hpp"

namespace wkbdelta {

namespace {

using ZetaPoly = RationalPolynomial;
using BiPoly = Polynomial<ZetaPoly>;  // outer variable t = x / A, coefficients in zeta

const ZetaPoly kZeta{Rational(0), Rational(1)};

Integer double_factorial(long n) {
  Integer r(1);
  for (long k = n; k > 1; k -= 2) r *= k;
  return r;
}

// int_{-1}^{1} t^(2k) (1 - t^2)^(+-1/2) dt / pi.
Rational wallis_moment(long k, bool sqrt_weight) {
  Rational r = sqrt_weight ? Rational(double_factorial(2 * k - 1), double_factorial(2 * k + 2))
                           : Rational(double_factorial(2 * k - 1), double_factorial(2 * k));
  r.canonicalize();
  return r;
}

ZetaPoly integrate_in_t(const BiPoly& p, bool sqrt_weight) {
  ZetaPoly out;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const ZetaPoly& c = p.coefficients()[j];
    if (c.is_zero()) continue;
    if (j % 2 != 0) throw std::logic_error("odd integrand in the delta expansion");
    out += c * wallis_moment(static_cast<long>(j / 2), sqrt_weight);
  }
  return out;
}

// V / (coupling A^(2d)) = zeta t^2 / 2 + t^(2d) / (2d).
BiPoly scaled_potential(int d) {
  std::vector<ZetaPoly> c(static_cast<std::size_t>(2 * d + 1));
  c[2] = kZeta * Rational(1, 2);
  c[static_cast<std::size_t>(2 * d)] += ZetaPoly(Rational(1, 2 * d));
  return BiPoly(std::move(c));
}

BiPoly kernel_polynomial(IntegralKind kind, int d) {
  const BiPoly v = scaled_potential(d);
  const BiPoly v1 = v.derivative();
  const BiPoly v2 = v1.derivative();
  const BiPoly v3 = v2.derivative();
  switch (kind) {
    case IntegralKind::J1:
      return BiPoly(ZetaPoly(Rational(1)));
    case IntegralKind::J2:
      return v2;
    case IntegralKind::J3:
      return v2 * v2 * ZetaPoly(Rational(7)) - v1 * v3 * ZetaPoly(Rational(5));
  }
  return {};
}

// (V(A) - V(x)) / (A^2 - x^2) / (coupling A^(2d-2)) without the harmonic part:
// (1 + t^2 + ... + t^(2d-2)) / d.
BiPoly gap_shape(int d) {
  std::vector<ZetaPoly> c(static_cast<std::size_t>(2 * d - 1));
  for (int j = 0; j < d; ++j) c[static_cast<std::size_t>(2 * j)] = ZetaPoly(Rational(1, d));
  return BiPoly(std::move(c));
}

bool sqrt_weight(IntegralKind kind) { return kind == IntegralKind::J1; }

Rational binomial_exponent(IntegralKind kind) {
  return kind == IntegralKind::J1 ? Rational(1, 2) : Rational(-1, 2);
}

// Powers of A and of the coupling carried by each integral in scaled variables.
struct ScalingExponents {
  long amplitude;
  Rational coupling;
  Rational constant_squared;  // square of the leading constant (1/sqrt 2 or sqrt 2)
};

ScalingExponents scaling(IntegralKind kind, int d) {
  switch (kind) {
    case IntegralKind::J1:
      return {d + 1, Rational(1, 2), Rational(1, 2)};
    case IntegralKind::J2:
      return {d - 1, Rational(1, 2), Rational(2)};
    case IntegralKind::J3:
      return {3L * d - 3, Rational(3, 2), Rational(2)};
  }
  return {0, Rational(0), Rational(1)};
}

// Splits kappa^q, q a multiple of 1/2, into the rational and radicand parts.
void absorb_power(Rational& rational, Rational& radicand, const Rational& kappa, const Rational& q) {
  Rational twice = q * 2;
  twice.canonicalize();
  if (twice.get_den() != 1) throw std::logic_error("only half-integer exponents are supported");
  const long two_q = twice.get_num().get_si();
  const long whole = two_q >= 0 ? two_q / 2 : -((-two_q + 1) / 2);
  rational *= pow(kappa, whole);
  if (two_q - 2 * whole != 0) radicand *= kappa;
}

// Moves square factors of the radicand into the rational part.
void canonicalize_radicand(Rational& rational, Rational& radicand) {
  if (sgn(radicand) <= 0) throw std::logic_error("radicand must be positive");
  auto reduce = [](Integer& n) {
    Integer root(1);
    for (unsigned long p = 2; p < 2000; ++p) {
      const Integer sq = Integer(p) * p;
      while (n % sq == 0) {
        n /= sq;
        root *= p;
      }
      if (sq > n) break;
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
      Integer r;
      mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
      root *= r;
      n = 1;
    }
    return root;
  };
  Integer num = radicand.get_num();
  Integer den = radicand.get_den();
  // sqrt(n/d) = sqrt(n d) / d keeps the radicand an integer.
  num *= den;
  const Integer root = reduce(num);
  rational *= Rational(root, den);
  rational.canonicalize();
  radicand = Rational(num);
}

// Divides out radical bases and powers of zeta from the coefficient polynomial, and moves
// its content into the rational prefactor.
void normalize(RadicalSeries& s) {
  if (s.coefficients.is_zero()) {
    s.prefactor = 0;
    s.prefactor_radicand = 1;
    return;
  }
  for (auto& r : s.radicals) {
    if (r.base.degree() < 1) continue;
    for (;;) {
      auto [q, rem] = divmod(s.coefficients, r.base);
      if (!rem.is_zero()) break;
      s.coefficients = std::move(q);
      r.power += 1;
    }
  }
  const std::size_t v = s.coefficients.valuation();
  if (v > 0) {
    s.coefficients = s.coefficients.shifted_down(v);
    s.zeta_power += static_cast<long>(v);
  }
  std::erase_if(s.radicals, [](const Radical& r) { return sgn(r.power) == 0; });
  auto pf = primitive_form(s.coefficients);
  s.prefactor *= pf.content;
  s.coefficients = std::move(pf.primitive);
  canonicalize_radicand(s.prefactor, s.prefactor_radicand);
}

struct Shift {
  ZetaPoly numerator;
  ZetaPoly denominator;
};

// Stationary point of the first-order expansion: u = (b + zeta a) / a with a = int g w and
// b = int g h w, for either sign of the binomial exponent.
Shift pms_shift(const BiPoly& g, const BiPoly& h, bool weight) {
  const ZetaPoly a = integrate_in_t(g, weight);
  const ZetaPoly b = integrate_in_t(g * h, weight);
  if (a.is_zero()) throw PmsFailure("first-order PMS has no stationary point");
  ZetaPoly num = b + kZeta * a;
  ZetaPoly den = a;
  const ZetaPoly common = gcd(num, den);
  if (common.degree() > 0) {
    num = divmod(num, common).first;
    den = divmod(den, common).first;
  }
  return {num, den};
}

RadicalSeries build_series(Family family, IntegralKind kind, int order,
                           std::optional<Rational> fixed_ratio, PmsMode mode) {
  if (family == Family::harmonic)
    throw NotImplementedError("the harmonic branch uses exact closed forms, not a delta series");
  if (order < 1) throw DomainError("delta_order must be at least 1");
  const int d = family == Family::quartic ? 2 : 3;
  const BiPoly g = kernel_polynomial(kind, d);
  const BiPoly h = gap_shape(d);
  const bool weight = sqrt_weight(kind);
  const Rational s = binomial_exponent(kind);

  Shift shift;
  if (fixed_ratio) {
    shift = {kZeta + ZetaPoly(*fixed_ratio), ZetaPoly(Rational(1))};
  } else if (mode == PmsMode::shared_j1) {
    shift = pms_shift(kernel_polynomial(IntegralKind::J1, d), h, true);
  } else {
    shift = pms_shift(g, h, weight);
  }
  const ZetaPoly& U = shift.numerator;
  const ZetaPoly& W = shift.denominator;

  // Delta = D / U with D = W (h + zeta) - U.
  BiPoly D = h + BiPoly(kZeta);
  {
    std::vector<ZetaPoly> c = D.coefficients();
    for (auto& ci : c) ci *= W;
    c[0] -= U;
    D = BiPoly(std::move(c));
  }

  std::vector<ZetaPoly> u_powers(static_cast<std::size_t>(order + 1));
  u_powers[0] = ZetaPoly(Rational(1));
  for (int k = 1; k <= order; ++k) u_powers[static_cast<std::size_t>(k)] = u_powers[static_cast<std::size_t>(k - 1)] * U;

  ZetaPoly sum;
  BiPoly term = g;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) term *= D;
    const ZetaPoly moment = integrate_in_t(term, weight);
    sum += moment * u_powers[static_cast<std::size_t>(order - k)] * binomial(s, static_cast<unsigned>(k));
  }

  const ScalingExponents sc = scaling(kind, d);
  RadicalSeries out;
  out.family = family;
  out.kind = kind;
  out.delta_order = order;
  out.prefactor = 1;
  out.prefactor_radicand = sc.constant_squared;
  out.pi_power = 1;
  // A = (m w^2 / (c zeta))^(1/(2d-2))
  const Rational a_exp(sc.amplitude, 2 * d - 2);
  out.mass_power = a_exp;
  out.omega_power = a_exp * 2;
  out.coupling_power = sc.coupling - a_exp;
  out.zeta_power = -a_exp;
  out.mass_power.canonicalize();
  out.omega_power.canonicalize();
  out.coupling_power.canonicalize();
  out.zeta_power.canonicalize();
  out.shift_numerator = U;
  out.shift_denominator = W;

  const Rational w_power = -s;
  if (W.degree() <= 0) {
    absorb_power(out.prefactor, out.prefactor_radicand, W.coeff(0), w_power);
  } else {
    auto pw = primitive_form(W);
    absorb_power(out.prefactor, out.prefactor_radicand, pw.content, w_power);
    out.radicals.push_back({pw.primitive, w_power});
  }
  const Rational u_power = s - order;
  auto pu = primitive_form(U);
  absorb_power(out.prefactor, out.prefactor_radicand, pu.content, u_power);
  out.radicals.push_back({pu.primitive, u_power});

  out.coefficients = sum;
  normalize(out);
  return out;
}

// Coefficients of Delta in powers of x^2, generic over the family.
std::vector<double> delta_coefficients(const PotentialSpec& spec, double amplitude,
                                       double lambda_squared) {
  const int d = anharmonic_degree(spec);
  const double mw2 = spec.mass * spec.omega * spec.omega;
  const double c = spec.family == Family::harmonic ? 0.0 : spec.coupling;
  const double den = 0.5 * (mw2 + lambda_squared);
  const double a2 = amplitude * amplitude;
  std::vector<double> out(static_cast<std::size_t>(std::max(d, 1)), 0.0);
  // Reduced gap P(y) = m w^2/2 + c/(2d) sum_{i<d} A^(2i) y^(d-1-i), y = x^2.
  for (int i = 0; i < d && c != 0.0; ++i) {
    out[static_cast<std::size_t>(d - 1 - i)] += c / (2.0 * d) * std::pow(a2, i);
  }
  out[0] += 0.5 * mw2 - den;
  for (auto& v : out) v /= den;
  return out;
}

}  // namespace

double DeltaPolynomial::operator()(double x) const {
  const double y = x * x;
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * y + *it;
  return acc;
}

double DeltaPolynomial::max_abs(double amplitude, int points) const {
  double m = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = -amplitude + 2.0 * amplitude * i / (points - 1);
    m = std::max(m, std::abs((*this)(x)));
  }
  return m;
}

DeltaPolynomial build_delta(const PotentialSpec& spec, double amplitude, double lambda_squared) {
  if (!(amplitude > 0.0)) throw DomainError("amplitude must be positive");
  if (!(lambda_squared >= 0.0)) throw DomainError("lambda^2 must be nonnegative");
  return {delta_coefficients(spec, amplitude, lambda_squared)};
}

PmsResult pms_first_order(IntegralKind kind, const PotentialSpec& spec, double amplitude) {
  if (!(amplitude > 0.0)) throw DomainError("amplitude must be positive");
  PmsResult out;
  if (spec.family == Family::harmonic) {
    out.lambda_squared = 0.0;
    out.ratio = Rational(0);
    return out;
  }
  const int d = anharmonic_degree(spec);
  const BiPoly g = kernel_polynomial(kind, d);
  const BiPoly h = gap_shape(d);
  const bool weight = sqrt_weight(kind);
  const Shift shift = pms_shift(g, h, weight);
  const double zeta = anharmonicity(spec, amplitude);
  const double scale = spec.coupling * std::pow(amplitude, 2.0 * d - 2.0);

  const long double u = shift.numerator(static_cast<long double>(zeta)) /
                        shift.denominator(static_cast<long double>(zeta));
  const long double ratio = u - zeta;
  if (ratio < 0.0L) throw PmsFailure("first-order PMS gives lambda^2 < 0");
  out.lambda_squared = static_cast<double>(ratio) * scale;
  const ZetaPoly exact_ratio = shift.numerator - kZeta * shift.denominator;
  if (shift.denominator.degree() == 0 && exact_ratio.degree() <= 0) {
    out.ratio = exact_ratio.coeff(0) / shift.denominator.coeff(0);
  }

  // First-order value in units of the common prefactor: f(u) = u^s a + s u^(s-1) (b - l a).
  const ZetaPoly a_poly = integrate_in_t(g, weight);
  const ZetaPoly b_poly = integrate_in_t(g * h, weight);
  const long double a = a_poly(static_cast<long double>(zeta));
  const long double b = b_poly(static_cast<long double>(zeta));
  const long double s = binomial_exponent(kind).get_d();
  const long double f = std::pow(u, s) * a + s * std::pow(u, s - 1) * (b - ratio * a);
  const long double df_du = s * (1 - s) * std::pow(u, s - 2) * (u * a - (b + zeta * a));
  // lambda d/dlambda = 2 l d/du
  out.residual = static_cast<double>(2 * ratio * df_du / f);

  const ScalingExponents sc = scaling(kind, d);
  out.first_order_value = static_cast<double>(
      std::sqrt(static_cast<long double>(sc.constant_squared.get_d())) * std::numbers::pi_v<long double> *
      std::pow(static_cast<long double>(amplitude), sc.amplitude) *
      std::pow(static_cast<long double>(spec.coupling), static_cast<long double>(sc.coupling.get_d())) * f);
  return out;
}

const Radical* RadicalSeries::find_radical(const RationalPolynomial& base) const {
  for (const auto& r : radicals)
    if (r.base == base) return &r;
  return nullptr;
}

RadicalSeries expand_integral(IntegralKind kind, const PotentialSpec& spec, double amplitude,
                              const InterpolationConfig& config) {
  spec.validate();
  if (!(amplitude > 0.0)) throw DomainError("amplitude must be positive");
  std::optional<Rational> ratio;
  if (config.lambda_squared) {
    if (!(*config.lambda_squared >= 0.0)) throw DomainError("lambda^2 must be nonnegative");
    if (spec.family == Family::harmonic)
      throw NotImplementedError("the harmonic branch uses exact closed forms, not a delta series");
    const int d = anharmonic_degree(spec);
    ratio = Rational(*config.lambda_squared / (spec.coupling * std::pow(amplitude, 2.0 * d - 2.0)));
  }
  return build_series(spec.family, kind, config.delta_order, ratio, config.pms_mode);
}

const RadicalSeries& standard_series(Family family, IntegralKind kind, int delta_order,
                                     PmsMode mode, int derivative_order) {
  using Key = std::tuple<Family, IntegralKind, int, PmsMode, int>;
  static std::mutex mutex;
  static std::map<Key, RadicalSeries> cache;
  const Key key{family, kind, delta_order, mode, derivative_order};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  RadicalSeries built = derivative_order == 0
                            ? build_series(family, kind, delta_order, std::nullopt, mode)
                            : differentiate_series(standard_series(family, kind, delta_order, mode,
                                                                   derivative_order - 1),
                                                   1);
  std::lock_guard lock(mutex);
  return cache.try_emplace(key, std::move(built)).first->second;
}

long double evaluate_series_ld(const RadicalSeries& series, const PotentialSpec& spec,
                               long double zeta) {
  if (!(zeta > 0.0L)) throw DomainError("zeta must be positive");
  if (series.family != spec.family) throw DomainError("series and potential belong to different families");
  auto p = [](long double base, const Rational& e) {
    return std::pow(base, static_cast<long double>(e.get_d()));
  };
  long double value = to_long_double(series.prefactor) *
                      std::sqrt(to_long_double(series.prefactor_radicand)) *
                      std::pow(std::numbers::pi_v<long double>, series.pi_power);
  value *= p(spec.mass, series.mass_power) * p(spec.omega, series.omega_power) *
           p(spec.coupling, series.coupling_power) * p(zeta, series.zeta_power);
  for (const auto& r : series.radicals) value *= p(r.base(zeta), r.power);
  return value * series.coefficients(zeta);
}

double evaluate_series(const RadicalSeries& series, const PotentialSpec& spec, double zeta) {
  return static_cast<double>(evaluate_series_ld(series, spec, zeta));
}

RadicalSeries differentiate_series(const RadicalSeries& series, int order) {
  if (order < 1) throw DomainError("derivative order must be at least 1");
  RadicalSeries cur = series;
  for (int k = 0; k < order; ++k) {
    RadicalSeries next = cur;
    next.derivative_order = cur.derivative_order + 1;
    if (cur.coefficients.is_zero()) {
      cur = next;
      continue;
    }
    // d/dz [z^p prod b_i^q_i S] = z^(p-1) prod b_i^(q_i-1) [p S B + z S' B + z S sum_i q_i b_i' B/b_i]
    ZetaPoly product(Rational(1));
    for (const auto& r : cur.radicals) product *= r.base;
    ZetaPoly bracket = cur.coefficients * product * cur.zeta_power;
    bracket += kZeta * cur.coefficients.derivative() * product;
    for (std::size_t i = 0; i < cur.radicals.size(); ++i) {
      ZetaPoly others(Rational(1));
      for (std::size_t j = 0; j < cur.radicals.size(); ++j)
        if (j != i) others *= cur.radicals[j].base;
      bracket += kZeta * cur.coefficients * cur.radicals[i].base.derivative() * others *
                 cur.radicals[i].power;
    }
    next.coefficients = bracket;
    next.zeta_power = cur.zeta_power - 1;
    for (auto& r : next.radicals) r.power -= 1;
    normalize(next);
    cur = std::move(next);
  }
  return cur;
}

double lambda_ratio(const RadicalSeries& series, double zeta) {
  const long double z = zeta;
  return static_cast<double>(series.shift_numerator(z) / series.shift_denominator(z) - z);
}

double max_abs_delta(const RadicalSeries& series, double zeta, int points) {
  const int d = series.family == Family::quartic ? 2 : 3;
  const long double z = zeta;
  const long double u = series.shift_numerator(z) / series.shift_denominator(z);
  long double m = 0.0L;
  for (int i = 0; i < points; ++i) {
    const long double t = -1.0L + 2.0L * i / (points - 1);
    const long double t2 = t * t;
    long double h = 0.0L, tp = 1.0L;
    for (int j = 0; j < d; ++j, tp *= t2) h += tp;
    h /= d;
    m = std::max(m, std::abs((h + z - u) / u));
  }
  return static_cast<double>(m);
}

double series_variable(const PotentialSpec& spec, double energy) {
  return anharmonicity(spec, turning_amplitude(spec, energy).amplitude);
}

ZeroExpansion expand_at_zero(const RadicalSeries& series, std::size_t order) {
  if (series.omega_power != series.zeta_power * -2)
    throw std::logic_error("series is not of the form A^k F(zeta)");
  ZeroExpansion out;
  long double lead = to_long_double(series.prefactor) *
                     std::sqrt(to_long_double(series.prefactor_radicand)) *
                     std::pow(std::numbers::pi_v<long double>, series.pi_power);
  ZetaPoly normalized(Rational(1));
  for (const auto& r : series.radicals) {
    const Rational b0 = r.base.coeff(0);
    if (sgn(b0) == 0) throw std::logic_error("radical base vanishes at zeta = 0");
    lead *= std::pow(to_long_double(b0), static_cast<long double>(r.power.get_d()));
    normalized = (normalized * series_power(r.base * (Rational(1) / b0), r.power, order)).truncated(order);
  }
  const Rational s0 = series.coefficients.coeff(0);
  if (sgn(s0) == 0) throw std::logic_error("series vanishes at zeta = 0");
  lead *= to_long_double(s0);
  normalized = (normalized * (series.coefficients * (Rational(1) / s0))).truncated(order);
  out.leading = static_cast<double>(lead);
  out.normalized = std::move(normalized);
  return out;
}

}  // namespace wkbdelta
