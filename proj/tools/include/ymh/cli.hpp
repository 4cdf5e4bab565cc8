#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ymh/fields.hpp"

namespace ymh::cli {

enum ExitCode : int { kPass = 0, kNumericFailure = 1, kUsageError = 2 };

/// Pass thresholds for verification commands.
struct Thresholds {
  double analytic = 1e-12;
  double finite_difference = 1e-3;
};

/// Real-slice grid z^1 = x, z^2 = y.
struct GridSpec {
  double xmin = -3.0, xmax = 3.0;
  double ymin = -3.0, ymax = 3.0;
  int nx = 201, ny = 201;
};

/// Values are row-major with y outer and x inner, both increasing.
struct Grid {
  GridSpec spec;
  std::vector<double> values;

  double x(int i) const;
  double y(int j) const;
  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * spec.nx + i]; }
};

/// Throws std::invalid_argument if the grid is degenerate.
void validate(const GridSpec& g);
Grid field_grid(const FieldConfig& c, const GridSpec& g);

/// CSV: '#' metadata lines, then "x,y,F" and one row per grid point.
void write_csv(std::ostream& os, const Grid& g, const std::vector<std::string>& metadata);
/// Plain PGM (P2), min-max scaled to 0..255; first row is the largest y.
void write_pgm(std::ostream& os, const Grid& g);

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ymh::cli
