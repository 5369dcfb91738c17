#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "wkbdelta/wkb.hpp"

namespace wkbdelta {

// Xi = |(J_delta - J_exact) / J_exact| * 100
double xi_percent(double approx, double exact);
// Sigma = |(E_approx - E_exact) / E_exact * 100|
double sigma_percent(double approx, double exact);

struct SpectrumRow {
  LevelResult level;
  std::optional<double> reference;
  std::optional<double> sigma;  // percent
};

struct SpectrumTable {
  std::string reference_method;
  std::vector<SpectrumRow> rows;
};

// Parses log:a:b:n, lin:a:b:n, or list:v1,v2,... into an ordered energy grid.
std::vector<double> parse_energy_grid(const std::string& text);

// Worker count for grid and level loops: hardware concurrency capped by WKBDELTA_THREADS.
unsigned worker_count();

// Entry point of the command-line tool. Exit status 0 on success, 2 for flag or input
// errors, 3 for numerical failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wkbdelta
