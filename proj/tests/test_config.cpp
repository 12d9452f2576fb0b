#include <doctest.h>

#include <string>

#include "bifurcata/config.hpp"
#include "bifurcata/errors.hpp"

using namespace bifurcata;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config_text(text, "test.cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("empty text yields the defaults") {
  const Config cfg = parse_config_text("", "empty.cfg");
  CHECK(cfg.nonlinearity == "cubic");
  CHECK(cfg.coefficients.empty());
  CHECK(cfg.a == 1.0);
  CHECK(cfg.k_max == 2);
  CHECK(cfg.lambda_max == 15.0);
  CHECK(cfg.branch_points == 200);
  CHECK(cfg.scan_points == 2000);
  CHECK(cfg.secondary_steps == 150);
  CHECK(cfg.profile_points == 401);
  CHECK(cfg.spectrum_grid == 2000);
  CHECK(cfg.scan_cells == 400);
  CHECK(cfg.quad_rel == 1e-11);
  CHECK(cfg.quad_abs == 1e-14);
  CHECK(cfg.theta_ftol == 1e-12);
  CHECK(cfg.out_dir == ".");
  CHECK(!cfg.json);
  CHECK(!cfg.svg);
  CHECK(cfg.svg_width == 900);
  CHECK(cfg.svg_height == 600);
}

TEST_CASE("full file round trip") {
  const std::string text =
      "# problem selection\n"
      "[problem]\n"
      "nonlinearity = custom\n"
      "coefficients = [1.0, -1.0]\n"
      "a = 0.5\n"
      "kmax = 3\n"
      "lambda_max = 40.0   # inline comment\n"
      "\n"
      "[grids]\n"
      "branch_points = 64\n"
      "scan_points = 500\n"
      "secondary_steps = 20\n"
      "profile_points = 101\n"
      "spectrum_grid = 800\n"
      "scan_cells = 100\n"
      "\n"
      "[tolerances]\n"
      "quad_rel = 1e-10\n"
      "quad_abs = 1e-13\n"
      "theta_ftol = 1e-11\n"
      "\n"
      "[output]\n"
      "dir = \"out/run1\"\n"
      "json = true\n"
      "svg = true\n"
      "width = 1200\n"
      "height = 800\n";
  const Config cfg = parse_config_text(text, "full.cfg");
  CHECK(cfg.nonlinearity == "custom");
  REQUIRE(cfg.coefficients.size() == 2);
  CHECK(cfg.coefficients[0] == 1.0);
  CHECK(cfg.coefficients[1] == -1.0);
  CHECK(cfg.a == 0.5);
  CHECK(cfg.k_max == 3);
  CHECK(cfg.lambda_max == 40.0);
  CHECK(cfg.branch_points == 64);
  CHECK(cfg.scan_points == 500);
  CHECK(cfg.secondary_steps == 20);
  CHECK(cfg.profile_points == 101);
  CHECK(cfg.spectrum_grid == 800);
  CHECK(cfg.scan_cells == 100);
  CHECK(cfg.quad_rel == 1e-10);
  CHECK(cfg.quad_abs == 1e-13);
  CHECK(cfg.theta_ftol == 1e-11);
  CHECK(cfg.out_dir == "out/run1");
  CHECK(cfg.json);
  CHECK(cfg.svg);
  CHECK(cfg.svg_width == 1200);
  CHECK(cfg.svg_height == 800);

  const Nonlinearity nl = config_nonlinearity(cfg);
  CHECK(nl.kind() == NonlinearityKind::custom);
  const QuadTols tols = config_quad_tols(cfg);
  CHECK(tols.rel == 1e-10);
  CHECK(tols.abs == 1e-13);
  CHECK(tols.theta_ftol == 1e-11);
}

TEST_CASE("parse errors cite the source and line") {
  CHECK(contains(error_of("[problem]\nbogus_key = 1\n"),
                 "test.cfg:2: unknown key 'problem.bogus_key'"));
  CHECK(contains(error_of("[nowhere]\n"), "test.cfg:1: unknown section"));
  CHECK(contains(error_of("[problem]\na = fast\n"),
                 "test.cfg:2: expected a number"));
  CHECK(contains(error_of("[problem]\nkmax = 2.5\n"),
                 "test.cfg:2: expected an integer"));
  CHECK(contains(error_of("[output]\njson = yes\n"),
                 "test.cfg:2: expected true or false"));
  CHECK(contains(error_of("[problem]\na = 1\na = 2\n"),
                 "test.cfg:3: duplicate key 'problem.a'"));
  CHECK(contains(error_of("a = 1\n"), "test.cfg:1: key 'a' outside any section"));
  CHECK(contains(error_of("[problem\n"), "test.cfg:1: malformed section header"));
  CHECK(contains(error_of("[problem]\njust words\n"),
                 "test.cfg:2: expected key = value"));
  CHECK(contains(error_of("[problem]\na =\n"), "test.cfg:2: empty value"));
  CHECK(contains(error_of("[problem]\ncoefficients = []\n"),
                 "test.cfg:2: expected a nonempty array"));
  CHECK(contains(error_of("[output]\ndir = \"oops\n"),
                 "test.cfg:2: unbalanced quotes"));
}

TEST_CASE("range validation") {
  CHECK(contains(error_of("[problem]\na = 0\n"), "a must be positive"));
  CHECK(contains(error_of("[problem]\na = -2\n"), "a must be positive"));
  CHECK(contains(error_of("[problem]\nkmax = 0\n"), "kmax must be at least 1"));
  CHECK(contains(error_of("[problem]\nlambda_max = -1\n"),
                 "lambda_max must be positive"));
  CHECK(contains(error_of("[problem]\nnonlinearity = quintic\n"),
                 "nonlinearity must be cubic, sine, or custom"));
  CHECK(contains(error_of("[problem]\nnonlinearity = custom\n"),
                 "custom nonlinearity needs a coefficients list"));
  CHECK(contains(error_of("[problem]\ncoefficients = [1, -1]\n"),
                 "only meaningful with nonlinearity = custom"));
  CHECK(contains(error_of("[grids]\nbranch_points = 1\n"),
                 "branch_points must be at least 2"));
  CHECK(contains(error_of("[tolerances]\nquad_rel = 0\n"),
                 "tolerances must be positive"));
  CHECK(contains(error_of("[output]\nwidth = 10\n"),
                 "svg dimensions must be at least 100"));

  Config cfg;
  cfg.a = -1.0;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg = Config{};
  CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(parse_config_file("/nonexistent/path.cfg"), ConfigError);
}

}  // TEST_SUITE
