#include "wkbdelta/series_json.hpp"

#include "wkbdelta/errors.hpp"

namespace wkbdelta {

namespace {

using nlohmann::json;

json rational_json(const Rational& q) { return json::array({q.get_num().get_str(), q.get_den().get_str()}); }

Rational rational_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("expected a [numerator, denominator] pair");
  auto part = [](const json& v) {
    return v.is_string() ? Integer(v.get<std::string>()) : Integer(v.get<long>());
  };
  Rational q(part(j[0]), part(j[1]));
  if (q.get_den() == 0) throw DomainError("zero denominator in series JSON");
  q.canonicalize();
  return q;
}

json polynomial_json(const RationalPolynomial& p) {
  json out = json::array();
  for (const auto& c : p.coefficients()) out.push_back(rational_json(c));
  return out;
}

RationalPolynomial polynomial_from(const json& j) {
  std::vector<Rational> c;
  for (const auto& v : j) c.push_back(rational_from(v));
  return RationalPolynomial(std::move(c));
}

json integer_polynomial_json(const RationalPolynomial& p) {
  json out = json::array();
  for (const auto& c : p.coefficients()) out.push_back(c.get_num().get_str());
  return out;
}

}  // namespace

json series_to_json(const RadicalSeries& s) {
  json doc;
  doc["family"] = std::string(to_string(s.family));
  doc["kind"] = std::string(to_string(s.kind));
  doc["delta_order"] = s.delta_order;
  doc["derivative_order"] = s.derivative_order;
  doc["prefactor_rational"] = rational_json(s.prefactor);
  doc["prefactor_sqrt"] = rational_json(s.prefactor_radicand);
  doc["pi_power"] = s.pi_power;
  doc["param_exponents"] = {{"mass", rational_json(s.mass_power)},
                            {"omega", rational_json(s.omega_power)},
                            {"coupling", rational_json(s.coupling_power)}};
  doc["zeta_power"] = rational_json(s.zeta_power);
  json radicals = json::array();
  const Radical* principal = nullptr;
  for (const auto& r : s.radicals) {
    radicals.push_back({{"base", integer_polynomial_json(r.base)}, {"power", rational_json(r.power)}});
    if (principal == nullptr || r.power < principal->power) principal = &r;
  }
  doc["radicals"] = radicals;
  if (principal != nullptr) {
    doc["radical_base"] = integer_polynomial_json(principal->base);
    doc["radical_power"] = rational_json(principal->power);
  } else {
    doc["radical_base"] = json::array({"1"});
    doc["radical_power"] = rational_json(Rational(0));
  }
  doc["coeffs"] = polynomial_json(s.coefficients);
  doc["shift_numerator"] = polynomial_json(s.shift_numerator);
  doc["shift_denominator"] = polynomial_json(s.shift_denominator);
  return doc;
}

RadicalSeries series_from_json(const json& doc) {
  try {
    RadicalSeries s;
    s.family = family_from_string(doc.at("family").get<std::string>());
    s.kind = integral_kind_from_string(doc.at("kind").get<std::string>());
    s.delta_order = doc.at("delta_order").get<int>();
    s.derivative_order = doc.value("derivative_order", 0);
    s.prefactor = rational_from(doc.at("prefactor_rational"));
    s.prefactor_radicand = doc.contains("prefactor_sqrt") ? rational_from(doc["prefactor_sqrt"]) : Rational(1);
    s.pi_power = doc.value("pi_power", 1);
    const json& p = doc.at("param_exponents");
    s.mass_power = rational_from(p.at("mass"));
    s.omega_power = rational_from(p.at("omega"));
    s.coupling_power = rational_from(p.at("coupling"));
    s.zeta_power = rational_from(doc.at("zeta_power"));
    for (const auto& r : doc.at("radicals")) {
      std::vector<Rational> base;
      for (const auto& c : r.at("base")) base.emplace_back(Integer(c.get<std::string>()));
      s.radicals.push_back({RationalPolynomial(std::move(base)), rational_from(r.at("power"))});
    }
    s.coefficients = polynomial_from(doc.at("coeffs"));
    s.shift_numerator = polynomial_from(doc.at("shift_numerator"));
    s.shift_denominator = polynomial_from(doc.at("shift_denominator"));
    return s;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed series JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DomainError(std::string("malformed series JSON: ") + e.what());
  }
}

std::string series_to_json_string(const RadicalSeries& series, int indent) {
  return series_to_json(series).dump(indent);
}

RadicalSeries series_from_json_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("series JSON does not parse: ") + e.what());
  }
  return series_from_json(doc);
}

}  // namespace wkbdelta
