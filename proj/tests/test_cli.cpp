#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "wkbdelta/cli.hpp"
#include "wkbdelta/errors.hpp"
#include "wkbdelta/series_json.hpp"

using namespace wkbdelta;

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "wkbdelta");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("error metrics") {
  CHECK(xi_percent(1.01, 1.0) == doctest::Approx(1.0));
  CHECK(sigma_percent(0.99, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("energy grids") {
  const auto g = parse_energy_grid("log:0.1:1000:5");
  REQUIRE(g.size() == 5);
  CHECK(g.front() == doctest::Approx(0.1));
  CHECK(g[2] == doctest::Approx(10.0));
  CHECK(g.back() == doctest::Approx(1000.0));
  CHECK(parse_energy_grid("lin:1:3:3") == std::vector<double>{1, 2, 3});
  CHECK(parse_energy_grid("list:2,0.5") == std::vector<double>{2, 0.5});
  CHECK_THROWS_AS(parse_energy_grid("log:0:1:4"), DomainError);
  CHECK_THROWS_AS(parse_energy_grid("cubic:1:2:3"), DomainError);
  CHECK_THROWS_AS(parse_energy_grid("list:1,x"), DomainError);
  CHECK_THROWS_AS(parse_energy_grid("list:-1"), DomainError);
}

TEST_CASE("spectrum table") {
  const Run r = run({"spectrum", "--family", "quartic", "--m", "0.5", "--omega", "2", "--mu", "8000", "--n-max",
                     "25", "--method", "closed-form", "--compare", "oracle", "--format", "csv"});
  REQUIRE(r.status == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 27);
  CHECK(l[0] == "n,E_method,E_reference,sigma_percent");
  for (std::size_t i = 6; i < l.size(); ++i) {
    const double sigma = std::stod(l[i].substr(l[i].rfind(',') + 1));
    CHECK(sigma < 0.1);
  }
}

TEST_CASE("integral-error table") {
  const Run r = run({"integral-error", "--family", "quartic", "--unit-params", "--kinds", "J1,J2,J3", "--e-grid",
                     "log:0.1:1000:6"});
  REQUIRE(r.status == 0);
  const auto l = lines(r.out);
  CHECK(l[0] == "E,zeta,kind,J_delta,J_exact,xi_percent");
  CHECK(l.size() == 19);
  const Run j = run({"integral-error", "--family", "sextic", "--unit-params", "--kinds", "J1", "--e-grid",
                     "list:1,10", "--format", "json"});
  REQUIRE(j.status == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc.at("rows").size() == 2);
}

TEST_CASE("zeta and coeffs") {
  const Run r = run({"zeta", "--family", "quartic", "--omega", "0", "--mu", "4", "--s", "1", "--k-numeric", "4",
                     "--format", "json"});
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(std::abs(doc.at("value").get<double>() - 3.635002) < 1e-6);
  CHECK(doc.at("exact").get<double>() == doctest::Approx(3.63500364488));

  const auto path = std::filesystem::temp_directory_path() / "wkbdelta_series_test.json";
  const Run c = run({"coeffs", "--family", "quartic", "--unit-params", "--series-json", path.string()});
  REQUIRE(c.status == 0);
  CHECK(c.out.find("e1,0.86714553") != std::string::npos);
  std::ifstream in(path);
  const auto series = nlohmann::json::parse(in);
  REQUIRE(series.is_array());
  CHECK(series.size() == 3);
  for (const auto& s : series) CHECK_NOTHROW(series_from_json(s));
  std::filesystem::remove(path);
}

TEST_CASE("exit codes") {
  CHECK(run({"spectrum", "--bogus"}).status == 2);
  CHECK(run({}).status == 2);
  CHECK(run({"spectrum", "--unit-params", "--mu", "3"}).status == 2);
  CHECK(run({"spectrum", "--family", "quartic", "--mu", "-1"}).status == 2);
  CHECK(run({"integral-error", "--unit-params", "--e-grid", "log:-1:2:3"}).status == 2);
  const Run div = run({"zeta", "--family", "quartic", "--omega", "0", "--mu", "4", "--s", "0.5"});
  CHECK(div.status == 2);
  CHECK(div.err.find("diverges") != std::string::npos);
  const Run acc = run({"zeta", "--family", "quartic", "--omega", "0", "--mu", "4", "--s", "1", "--k-numeric", "1",
                       "--tol", "1e-15"});
  CHECK(acc.status == 3);
  CHECK_FALSE(acc.err.empty());
}

TEST_CASE("determinism across thread counts") {
  const std::vector<std::string> args = {"spectrum", "--family", "sextic", "--unit-params", "--n-max", "12",
                                         "--method", "wkb", "--compare", "closed-form"};
  const Run a = run(args);
  setenv("WKBDELTA_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  const Run b = run(args);
  unsetenv("WKBDELTA_THREADS");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == run(args).out);
}
