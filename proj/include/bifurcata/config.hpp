#pragma once

#include <string>
#include <vector>

#include "bifurcata/nonlinearity.hpp"
#include "bifurcata/quadrature.hpp"

namespace bifurcata {

// Run configuration, filled from a plain-text file with [section] headers and
// key = value lines (a small TOML-like dialect: '#' comments, quoted or bare
// strings, [a, b, c] arrays for the coefficient list).  Command-line flags
// override file values at the frontend layer.

struct Config {
  // [problem]
  std::string nonlinearity = "cubic";  // cubic | sine | custom
  std::vector<double> coefficients;    // custom only: f(u) = u * (c0 + c1 u^2 + c2 u^4 + ...)
  double a = 1.0;
  int k_max = 2;
  double lambda_max = 15.0;

  // [grids]
  int branch_points = 200;    // points per traced primary branch
  int scan_points = 2000;     // scan resolution for secondary bifurcation roots
  int secondary_steps = 150;  // continuation steps per secondary direction
  int profile_points = 401;   // nodes in a written solution profile
  int spectrum_grid = 2000;   // second-difference intervals per side
  int scan_cells = 400;       // cells per axis in the completeness scan

  // [tolerances]
  double quad_rel = 1e-11;
  double quad_abs = 1e-14;
  double theta_ftol = 1e-12;

  // [output]
  std::string out_dir = ".";
  bool json = false;
  bool svg = false;
  int svg_width = 900;
  int svg_height = 600;
};

// Parses and validates.  Unknown sections or keys, malformed values,
// duplicate keys, and out-of-range settings (a <= 0, k_max < 1, ...) all
// throw ConfigError naming the source and line.
Config parse_config_file(const std::string& path);
Config parse_config_text(const std::string& text, const std::string& source_name);

// Applies the defaults-and-ranges validation that parsing performs, for
// configs assembled or modified programmatically (e.g. after flag overrides).
void validate_config(const Config& cfg);

// Builders for the computational objects a config describes.
Nonlinearity config_nonlinearity(const Config& cfg);
QuadTols config_quad_tols(const Config& cfg);

}  // namespace bifurcata
