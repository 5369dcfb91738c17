#include "wkbdelta/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "wkbdelta/errors.hpp"
#include "wkbdelta/oracle.hpp"
#include "wkbdelta/quadrature.hpp"
#include "wkbdelta/series_json.hpp"
#include "wkbdelta/zeta.hpp"

namespace wkbdelta {

double xi_percent(double approx, double exact) { return std::abs((approx - exact) / exact) * 100.0; }

double sigma_percent(double approx, double exact) { return std::abs((approx - exact) / exact * 100.0); }

std::vector<double> parse_energy_grid(const std::string& text) {
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw DomainError("bad number '" + s + "' in energy grid '" + text + "'");
    }
  };
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) parts.push_back(item);
    return parts;
  };
  std::vector<double> grid;
  const auto colon = text.find(':');
  const std::string head = colon == std::string::npos ? "list" : text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? text : text.substr(colon + 1);
  if (head == "list") {
    for (const auto& p : split(rest, ',')) grid.push_back(number(p));
  } else if (head == "log" || head == "lin") {
    const auto p = split(rest, ':');
    if (p.size() != 3) throw DomainError("energy grid must look like " + head + ":a:b:n");
    const double a = number(p[0]);
    const double b = number(p[1]);
    const double n = number(p[2]);
    if (!(n >= 1 && n == std::floor(n))) throw DomainError("grid size must be a positive integer");
    if (head == "log" && !(a > 0 && b > 0)) throw DomainError("log grid bounds must be positive");
    const int count = static_cast<int>(n);
    for (int i = 0; i < count; ++i) {
      const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
      grid.push_back(head == "log" ? std::exp(std::log(a) + f * (std::log(b) - std::log(a))) : a + f * (b - a));
    }
    if (count > 1) grid.back() = b;
  } else {
    throw DomainError("unknown grid kind '" + head + "' (use log, lin or list)");
  }
  if (grid.empty()) throw DomainError("energy grid is empty");
  for (double e : grid)
    if (!(e > 0.0)) throw DomainError("grid energies must be positive");
  return grid;
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("WKBDELTA_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && *end == '\0' && v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

namespace {

// Runs f(i) for i in [0, count) on worker_count() threads; results keep index order and the
// lowest-index exception is rethrown.
template <class R, class F>
std::vector<R> parallel_map(std::size_t count, F f) {
  std::vector<std::optional<R>> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(count);
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

nlohmann::json json_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

struct PotentialFlags {
  std::string family = "quartic";
  std::optional<double> hbar, mass, omega, mu, rho, coupling;
  bool unit = false;

  void attach(CLI::App* app) {
    app->add_option("--family", family, "Potential family")
        ->check(CLI::IsMember({"quartic", "sextic", "harmonic"}));
    app->add_option("--hbar", hbar, "Reduced Planck constant (default 1)");
    app->add_option("--m", mass, "Mass (default 1)");
    app->add_option("--omega", omega, "Harmonic frequency (default 1)");
    app->add_option("--mu", mu, "Quartic coupling in mu x^4 / 4");
    app->add_option("--rho", rho, "Sextic coupling in rho x^6 / 6");
    app->add_option("--coupling", coupling, "Coupling of either anharmonic family");
    app->add_flag("--unit-params", unit, "Set hbar = m = omega = coupling = 1");
  }

  PotentialSpec spec() const {
    const Family f = family_from_string(family);
    const bool any = hbar || mass || omega || mu || rho || coupling;
    if (unit && any) throw DomainError("--unit-params cannot be combined with explicit parameters");
    if (mu && f != Family::quartic) throw DomainError("--mu belongs to the quartic family");
    if (rho && f != Family::sextic) throw DomainError("--rho belongs to the sextic family");
    if (static_cast<int>(mu.has_value()) + static_cast<int>(rho.has_value()) + static_cast<int>(coupling.has_value()) > 1)
      throw DomainError("give the coupling once (--mu, --rho or --coupling)");
    if (f == Family::harmonic && (mu || rho || coupling)) throw DomainError("the harmonic family has no coupling");
    PotentialSpec s = PotentialSpec::unit(f);
    if (hbar) s.hbar = *hbar;
    if (mass) s.mass = *mass;
    if (omega) s.omega = *omega;
    if (mu) s.coupling = *mu;
    if (rho) s.coupling = *rho;
    if (coupling) s.coupling = *coupling;
    s.validate();
    return s;
  }
};

struct SolverFlags {
  std::string hbar_order = "h4";
  int delta_order = 10;
  std::string source = "series";
  std::string pms = "per-integral";

  void attach(CLI::App* app) {
    app->add_option("--hbar-order", hbar_order, "WKB order of the quantization condition")
        ->check(CLI::IsMember({"h0", "h2", "h4"}));
    app->add_option("--delta-order", delta_order, "Truncation order of the delta expansion")
        ->check(CLI::Range(1, 40));
    app->add_option("--source", source, "Integrals from the delta series or from quadrature")
        ->check(CLI::IsMember({"series", "quadrature"}));
    add_pms(app);
  }

  void add_pms(CLI::App* app) {
    app->add_option("--pms", pms, "lambda per integral or shared from J1")
        ->check(CLI::IsMember({"per-integral", "shared"}));
  }

  PmsMode mode() const { return pms == "shared" ? PmsMode::shared_j1 : PmsMode::per_integral; }

  QuantizationConfig config() const {
    QuantizationConfig c;
    c.hbar_order = hbar_order_from_string(hbar_order);
    c.delta_order = delta_order;
    c.integral_source = integral_source_from_string(source);
    c.pms_mode = mode();
    return c;
  }
};

struct OutputFlags {
  std::string format = "csv";
  std::string path;

  void attach(CLI::App* app) {
    app->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--output", path, "Output file (standard output when absent)");
  }

  bool json() const { return format == "json"; }

  void write(const std::string& text, std::ostream& out) const {
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DomainError("cannot open output file '" + path + "'");
    file << text;
    if (!file) throw DomainError("failed writing output file '" + path + "'");
  }
};

// Energies of levels n_min..n_max by one method.
std::vector<double> method_energies(const std::string& method, const PotentialSpec& spec, int n_min, int n_max,
                                    const SolverFlags& solver, double tol, std::vector<LevelResult>* levels) {
  const auto count = static_cast<std::size_t>(n_max - n_min + 1);
  std::vector<double> out;
  if (method == "oracle") {
    if (spec.family == Family::harmonic) {
      for (int n = n_min; n <= n_max; ++n) out.push_back(harmonic_reference::level(spec, n));
    } else {
      const OracleSpectrum o = exact_spectrum(spec, n_max, tol);
      out.assign(o.energies.begin() + n_min, o.energies.end());
    }
    if (levels)
      for (std::size_t i = 0; i < count; ++i)
        levels->push_back({n_min + static_cast<long>(i), out[i], "oracle", 0.0, 0, NAN});
  } else if (method == "closed-form") {
    if (spec.family == Family::quartic) {
      const ClosedFormQuartic c = quartic_closed_form(spec, solver.delta_order, solver.mode());
      for (int n = n_min; n <= n_max; ++n) out.push_back(quartic_energy_closed_form(c, n));
    } else if (spec.family == Family::sextic) {
      const ClosedFormSextic c = sextic_closed_form(spec, solver.delta_order, solver.mode());
      for (int n = n_min; n <= n_max; ++n) out.push_back(sextic_energy_closed_form(c, n));
    } else {
      for (int n = n_min; n <= n_max; ++n) out.push_back(harmonic_reference::level(spec, n));
    }
    if (levels)
      for (std::size_t i = 0; i < count; ++i)
        levels->push_back({n_min + static_cast<long>(i), out[i], "closed-form", 0.0, 0, NAN});
  } else {
    const QuantizationConfig config = solver.config();
    auto solved = parallel_map<LevelResult>(count, [&](std::size_t i) {
      return solve_level(spec, n_min + static_cast<long>(i), config);
    });
    for (const auto& r : solved) out.push_back(r.energy);
    if (levels) levels->insert(levels->end(), solved.begin(), solved.end());
  }
  return out;
}

int spectrum_command(const PotentialFlags& pf, const SolverFlags& sf, const OutputFlags& of, int n_min, int n_max,
                     const std::string& method, const std::string& compare, double tol, std::ostream& out) {
  const PotentialSpec spec = pf.spec();
  if (n_min < 0 || n_max < n_min) throw DomainError("need 0 <= n-min <= n-max");
  SpectrumTable table;
  table.reference_method = compare;
  std::vector<LevelResult> levels;
  method_energies(method, spec, n_min, n_max, sf, tol, &levels);
  std::vector<double> reference;
  if (compare != "none") reference = method_energies(compare, spec, n_min, n_max, sf, tol, nullptr);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    SpectrumRow row{levels[i], std::nullopt, std::nullopt};
    if (!reference.empty()) {
      row.reference = reference[i];
      row.sigma = sigma_percent(levels[i].energy, reference[i]);
    }
    table.rows.push_back(row);
  }

  std::ostringstream text;
  if (of.json()) {
    nlohmann::json doc;
    doc["command"] = "spectrum";
    doc["family"] = std::string(to_string(spec.family));
    doc["parameters"] = {{"hbar", spec.hbar}, {"m", spec.mass}, {"omega", spec.omega}, {"coupling", spec.coupling}};
    doc["method"] = method;
    doc["reference"] = compare;
    doc["levels"] = nlohmann::json::array();
    for (const auto& r : table.rows) {
      doc["levels"].push_back({{"n", r.level.n},
                               {"E_method", r.level.energy},
                               {"E_reference", json_number(r.reference)},
                               {"sigma_percent", json_number(r.sigma)},
                               {"method", r.level.method},
                               {"residual", r.level.residual},
                               {"iterations", r.level.iterations},
                               {"max_abs_delta", json_number(r.level.convergence_gate)}});
    }
    text << doc.dump(2) << '\n';
  } else {
    text << "n,E_method,E_reference,sigma_percent\n";
    for (const auto& r : table.rows)
      text << r.level.n << ',' << fmt(r.level.energy) << ',' << fmt(r.reference) << ',' << fmt(r.sigma) << '\n';
  }
  of.write(text.str(), out);
  return 0;
}

std::vector<IntegralKind> parse_kinds(const std::string& text) {
  std::vector<IntegralKind> kinds;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) kinds.push_back(integral_kind_from_string(item));
  if (kinds.empty()) throw DomainError("no integral kinds given");
  return kinds;
}

int integral_error_command(const PotentialFlags& pf, const SolverFlags& sf, const OutputFlags& of,
                           const std::string& kinds_text, const std::string& grid_text, double tol,
                           std::ostream& out) {
  const PotentialSpec spec = pf.spec();
  if (spec.family == Family::harmonic)
    throw NotImplementedError("integral-error compares delta approximants, which the harmonic branch does not have");
  if (spec.omega == 0.0) throw UnsupportedMapError("integral-error needs omega > 0 for the zeta variable");
  const auto kinds = parse_kinds(kinds_text);
  const auto grid = parse_energy_grid(grid_text);
  struct Row {
    double energy, zeta;
    IntegralKind kind;
    double approx, exact, xi, gate;
  };
  const std::size_t count = grid.size() * kinds.size();
  auto rows = parallel_map<Row>(count, [&](std::size_t i) {
    const double e = grid[i / kinds.size()];
    const IntegralKind k = kinds[i % kinds.size()];
    const RadicalSeries& s = standard_series(spec.family, k, sf.delta_order, sf.mode());
    const double z = series_variable(spec, e);
    const double approx = evaluate_series(s, spec, z);
    const double exact = integral_exact(k, spec, e, tol).value;
    return Row{e, z, k, approx, exact, xi_percent(approx, exact), max_abs_delta(s, z)};
  });
  std::ostringstream text;
  if (of.json()) {
    nlohmann::json doc;
    doc["command"] = "integral-error";
    doc["family"] = std::string(to_string(spec.family));
    doc["delta_order"] = sf.delta_order;
    doc["rows"] = nlohmann::json::array();
    for (const auto& r : rows)
      doc["rows"].push_back({{"E", r.energy},
                             {"zeta", r.zeta},
                             {"kind", std::string(to_string(r.kind))},
                             {"J_delta", r.approx},
                             {"J_exact", r.exact},
                             {"xi_percent", r.xi},
                             {"max_abs_delta", r.gate}});
    text << doc.dump(2) << '\n';
  } else {
    text << "E,zeta,kind,J_delta,J_exact,xi_percent\n";
    for (const auto& r : rows)
      text << fmt(r.energy) << ',' << fmt(r.zeta) << ',' << to_string(r.kind) << ',' << fmt(r.approx) << ','
           << fmt(r.exact) << ',' << fmt(r.xi) << '\n';
  }
  of.write(text.str(), out);
  return 0;
}

int compare_command(const PotentialFlags& pf, const SolverFlags& sf, const OutputFlags& of, int n_min, int n_max,
                    double tol, std::ostream& out) {
  const PotentialSpec spec = pf.spec();
  if (n_min < 0 || n_max < n_min) throw DomainError("need 0 <= n-min <= n-max");
  const auto closed = method_energies("closed-form", spec, n_min, n_max, sf, tol, nullptr);
  const auto wkb = method_energies("wkb", spec, n_min, n_max, sf, tol, nullptr);
  const auto oracle = method_energies("oracle", spec, n_min, n_max, sf, tol, nullptr);
  std::ostringstream text;
  if (of.json()) {
    nlohmann::json doc;
    doc["command"] = "compare";
    doc["family"] = std::string(to_string(spec.family));
    doc["levels"] = nlohmann::json::array();
    for (std::size_t i = 0; i < oracle.size(); ++i)
      doc["levels"].push_back({{"n", n_min + static_cast<long>(i)},
                               {"E_closed_form", closed[i]},
                               {"E_wkb", wkb[i]},
                               {"E_oracle", oracle[i]},
                               {"sigma_closed_form_percent", sigma_percent(closed[i], oracle[i])},
                               {"sigma_wkb_percent", sigma_percent(wkb[i], oracle[i])}});
    text << doc.dump(2) << '\n';
  } else {
    text << "n,E_closed_form,E_wkb,E_oracle,sigma_closed_form_percent,sigma_wkb_percent\n";
    for (std::size_t i = 0; i < oracle.size(); ++i)
      text << n_min + static_cast<long>(i) << ',' << fmt(closed[i]) << ',' << fmt(wkb[i]) << ',' << fmt(oracle[i])
           << ',' << fmt(sigma_percent(closed[i], oracle[i])) << ',' << fmt(sigma_percent(wkb[i], oracle[i]))
           << '\n';
  }
  of.write(text.str(), out);
  return 0;
}

int coeffs_command(const PotentialFlags& pf, const SolverFlags& sf, const OutputFlags& of,
                   const std::string& kinds_text, const std::string& series_path, std::ostream& out) {
  const PotentialSpec spec = pf.spec();
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, double>> units;
  if (spec.family == Family::quartic) {
    const ClosedFormQuartic c = quartic_closed_form(spec, sf.delta_order, sf.mode());
    values = {{"e1", c.e1}, {"e2", c.e2}, {"e3", c.e3}, {"e4_quantum", c.e4_quantum},
              {"e4_anharmonic", c.e4_anharmonic}, {"e4", c.e4()}};
    units = {{"e1", c.e1_unit}, {"e2", c.e2_unit}, {"e3", c.e3_unit.get_d()}, {"e4_quantum", c.e4_quantum_unit},
             {"e4_anharmonic", c.e4_anharmonic_unit}, {"e4", NAN}};
  } else if (spec.family == Family::sextic) {
    const ClosedFormSextic c = sextic_closed_form(spec, sf.delta_order, sf.mode());
    values = {{"alpha1", c.alpha1}, {"alpha2", c.alpha2}, {"beta1", c.beta1}, {"beta2", c.beta2}, {"beta3", c.beta3}};
  } else {
    throw NotImplementedError("the harmonic branch has no closed-form coefficients beyond hbar omega (n + 1/2)");
  }

  if (!series_path.empty()) {
    nlohmann::json all = nlohmann::json::array();
    for (IntegralKind k : parse_kinds(kinds_text))
      all.push_back(series_to_json(standard_series(spec.family, k, sf.delta_order, sf.mode())));
    std::ofstream file(series_path, std::ios::binary);
    if (!file) throw DomainError("cannot open series file '" + series_path + "'");
    file << all.dump(2) << '\n';
  }

  std::ostringstream text;
  if (of.json()) {
    nlohmann::json doc;
    doc["command"] = "coeffs";
    doc["family"] = std::string(to_string(spec.family));
    doc["coefficients"] = nlohmann::json::object();
    for (const auto& [name, v] : values) doc["coefficients"][name] = v;
    if (spec.family == Family::quartic) {
      doc["unit_coefficients"] = nlohmann::json::object();
      for (const auto& [name, v] : units)
        if (std::isfinite(v)) doc["unit_coefficients"][name] = v;
      const ClosedFormQuartic c = quartic_closed_form(spec, sf.delta_order, sf.mode());
      doc["e3_unit_exact"] = c.e3_unit.get_str();
    }
    text << doc.dump(2) << '\n';
  } else {
    text << "name,value\n";
    for (const auto& [name, v] : values) text << name << ',' << fmt(v) << '\n';
  }
  of.write(text.str(), out);
  return 0;
}

int zeta_command(const PotentialFlags& pf, const OutputFlags& of, double s, int k, double tol, std::ostream& out) {
  const PotentialSpec spec = pf.spec();
  const ZetaEstimate z = zeta_hybrid(spec, s, k, tol);
  std::optional<double> exact;
  if (spec.family == Family::quartic && spec.omega == 0.0 && s == 1.0) exact = quartic_zeta_one_exact(spec);
  if (spec.family == Family::harmonic) exact = harmonic_zeta_exact(spec, s);
  std::ostringstream text;
  if (of.json()) {
    nlohmann::json doc = {{"command", "zeta"},       {"s", z.s},       {"k_numeric", z.k_numeric},
                          {"value", z.value},        {"head", z.head}, {"tail", z.tail},
                          {"tail_bound", z.tail_bound}, {"exact", json_number(exact)}};
    text << doc.dump(2) << '\n';
  } else {
    text << "s,k_numeric,value,head,tail,tail_bound,exact\n";
    text << fmt(z.s) << ',' << z.k_numeric << ',' << fmt(z.value) << ',' << fmt(z.head) << ',' << fmt(z.tail) << ','
         << fmt(z.tail_bound) << ',' << fmt(exact) << '\n';
  }
  of.write(text.str(), out);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Delta-expansion WKB spectra of quartic and sextic oscillators"};
  app.name("wkbdelta");
  app.require_subcommand(1);

  PotentialFlags pf;
  SolverFlags sf;
  OutputFlags of;
  int n_min = 0;
  int n_max = 10;
  std::string method = "closed-form";
  std::string compare = "oracle";
  double oracle_tol = 1e-10;
  double quad_tol = kDefaultQuadratureTol;
  std::string kinds = "J1,J2,J3";
  std::string grid = "log:0.1:1000:50";
  std::string series_path;
  double s = 1.0;
  int k_numeric = 4;
  double zeta_tol = 1e-8;

  auto* spectrum = app.add_subcommand("spectrum", "Energy levels by one method, compared with another");
  pf.attach(spectrum);
  sf.attach(spectrum);
  of.attach(spectrum);
  spectrum->add_option("--n-min", n_min, "First level")->check(CLI::NonNegativeNumber);
  spectrum->add_option("--n-max", n_max, "Last level")->check(CLI::NonNegativeNumber);
  spectrum->add_option("--method", method, "Method for E_method")
      ->check(CLI::IsMember({"closed-form", "wkb", "oracle"}));
  spectrum->add_option("--compare", compare, "Method for E_reference")
      ->check(CLI::IsMember({"oracle", "closed-form", "wkb", "none"}));
  spectrum->add_option("--tol", oracle_tol, "Relative convergence tolerance of the oracle");

  auto* integral = app.add_subcommand("integral-error", "Error of the delta approximants against quadrature");
  PotentialFlags pf_i;
  SolverFlags sf_i;
  OutputFlags of_i;
  pf_i.attach(integral);
  of_i.attach(integral);
  integral->add_option("--delta-order", sf_i.delta_order, "Truncation order of the delta expansion")
      ->check(CLI::Range(1, 40));
  sf_i.add_pms(integral);
  integral->add_option("--kinds", kinds, "Comma-separated subset of J1,J2,J3");
  integral->add_option("--e-grid", grid, "log:a:b:n, lin:a:b:n or list:v1,v2,...");
  integral->add_option("--tol", quad_tol, "Relative quadrature tolerance");

  auto* cmp = app.add_subcommand("compare", "Closed form, WKB root solve and oracle side by side");
  PotentialFlags pf_c;
  SolverFlags sf_c;
  OutputFlags of_c;
  pf_c.attach(cmp);
  sf_c.attach(cmp);
  of_c.attach(cmp);
  int c_min = 0;
  int c_max = 10;
  double c_tol = 1e-10;
  cmp->add_option("--n-min", c_min, "First level")->check(CLI::NonNegativeNumber);
  cmp->add_option("--n-max", c_max, "Last level")->check(CLI::NonNegativeNumber);
  cmp->add_option("--tol", c_tol, "Relative convergence tolerance of the oracle");

  auto* coeffs = app.add_subcommand("coeffs", "Closed-form spectrum coefficients and series export");
  PotentialFlags pf_k;
  SolverFlags sf_k;
  OutputFlags of_k;
  pf_k.attach(coeffs);
  of_k.attach(coeffs);
  coeffs->add_option("--delta-order", sf_k.delta_order, "Truncation order of the delta expansion")
      ->check(CLI::Range(1, 40));
  sf_k.add_pms(coeffs);
  std::string k_kinds = "J1,J2,J3";
  coeffs->add_option("--kinds", k_kinds, "Series written by --series-json");
  coeffs->add_option("--series-json", series_path, "Write the exact approximants to this JSON file");

  auto* zeta = app.add_subcommand("zeta", "Spectral zeta function Z(s)");
  PotentialFlags pf_z;
  OutputFlags of_z;
  pf_z.attach(zeta);
  of_z.attach(zeta);
  zeta->add_option("--s", s, "Argument of Z");
  zeta->add_option("--k-numeric", k_numeric, "Levels taken from the oracle")->check(CLI::PositiveNumber);
  zeta->add_option("--tol", zeta_tol, "Required bound on the tail error");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*spectrum) return spectrum_command(pf, sf, of, n_min, n_max, method, compare, oracle_tol, out);
    if (*integral) return integral_error_command(pf_i, sf_i, of_i, kinds, grid, quad_tol, out);
    if (*cmp) return compare_command(pf_c, sf_c, of_c, c_min, c_max, c_tol, out);
    if (*coeffs) return coeffs_command(pf_k, sf_k, of_k, k_kinds, series_path, out);
    if (*zeta) return zeta_command(pf_z, of_z, s, k_numeric, zeta_tol, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const AccuracyError& e) {
    err << "numerical error: " << e.what() << " (best estimate " << fmt(e.best_estimate()) << ", error bound "
        << fmt(e.error_bound()) << ")\n";
    return 3;
  } catch (const ConvergenceError& e) {
    err << "numerical error: " << e.what() << " (converged prefix " << e.converged_prefix() << ")\n";
    return 3;
  } catch (const FormulaRangeError& e) {
    err << "numerical error: " << e.what() << " (level " << e.level() << ")\n";
    return 3;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace wkbdelta
