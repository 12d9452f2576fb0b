#include "bifurcata/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "bifurcata/errors.hpp"

namespace bifurcata {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& source, int line,
                       const std::string& msg) {
  std::ostringstream os;
  os << source << ":" << line << ": " << msg;
  throw ConfigError(os.str());
}

double parse_number(const std::string& source, int line,
                    const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    fail(source, line, "expected a number, got '" + value + "'");
  return x;
}

int parse_int(const std::string& source, int line, const std::string& value) {
  const double x = parse_number(source, line, value);
  const int i = static_cast<int>(x);
  if (static_cast<double>(i) != x)
    fail(source, line, "expected an integer, got '" + value + "'");
  return i;
}

bool parse_bool(const std::string& source, int line,
                const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  fail(source, line, "expected true or false, got '" + value + "'");
}

std::string parse_string(const std::string& source, int line,
                         const std::string& value) {
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
    return value.substr(1, value.size() - 2);
  if (!value.empty() && (value.front() == '"' || value.back() == '"'))
    fail(source, line, "unbalanced quotes in '" + value + "'");
  return value;
}

std::vector<double> parse_array(const std::string& source, int line,
                                std::string value) {
  if (value.size() >= 2 && value.front() == '[' && value.back() == ']')
    value = value.substr(1, value.size() - 2);
  std::vector<double> out;
  std::string item;
  std::istringstream is(value);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(source, line, "empty element in array");
    out.push_back(parse_number(source, line, item));
  }
  if (out.empty()) fail(source, line, "expected a nonempty array");
  return out;
}

}  // namespace

void validate_config(const Config& cfg) {
  const auto bad = [](const std::string& msg) { throw ConfigError(msg); };
  if (cfg.nonlinearity != "cubic" && cfg.nonlinearity != "sine" &&
      cfg.nonlinearity != "custom")
    bad("nonlinearity must be cubic, sine, or custom (got '" +
        cfg.nonlinearity + "')");
  if (cfg.nonlinearity == "custom" && cfg.coefficients.empty())
    bad("custom nonlinearity needs a coefficients list");
  if (cfg.nonlinearity != "custom" && !cfg.coefficients.empty())
    bad("coefficients are only meaningful with nonlinearity = custom");
  if (!(cfg.a > 0.0)) bad("a must be positive");
  if (cfg.k_max < 1) bad("kmax must be at least 1");
  if (!(cfg.lambda_max > 0.0)) bad("lambda_max must be positive");
  if (cfg.branch_points < 2) bad("branch_points must be at least 2");
  if (cfg.scan_points < 16) bad("scan_points must be at least 16");
  if (cfg.secondary_steps < 1) bad("secondary_steps must be at least 1");
  if (cfg.profile_points < 8) bad("profile_points must be at least 8");
  if (cfg.spectrum_grid < 16) bad("spectrum_grid must be at least 16");
  if (cfg.scan_cells < 8) bad("scan_cells must be at least 8");
  if (!(cfg.quad_rel > 0.0) || !(cfg.quad_abs > 0.0) ||
      !(cfg.theta_ftol > 0.0))
    bad("tolerances must be positive");
  if (cfg.svg_width < 100 || cfg.svg_height < 100)
    bad("svg dimensions must be at least 100");
  if (cfg.out_dir.empty()) bad("output dir must not be empty");
}

Config parse_config_text(const std::string& text,
                         const std::string& source_name) {
  Config cfg;
  std::istringstream is(text);
  std::string raw;
  std::string section;
  std::set<std::string> seen;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string line = raw;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        fail(source_name, line_no, "malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "problem" && section != "grids" &&
          section != "tolerances" && section != "output")
        fail(source_name, line_no, "unknown section [" + section + "]");
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(source_name, line_no, "expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(source_name, line_no, "empty key");
    if (value.empty()) fail(source_name, line_no, "empty value for '" + key + "'");
    if (section.empty())
      fail(source_name, line_no, "key '" + key + "' outside any section");
    const std::string qualified = section + "." + key;
    if (!seen.insert(qualified).second)
      fail(source_name, line_no, "duplicate key '" + qualified + "'");

    if (section == "problem") {
      if (key == "nonlinearity")
        cfg.nonlinearity = parse_string(source_name, line_no, value);
      else if (key == "coefficients")
        cfg.coefficients = parse_array(source_name, line_no, value);
      else if (key == "a")
        cfg.a = parse_number(source_name, line_no, value);
      else if (key == "kmax")
        cfg.k_max = parse_int(source_name, line_no, value);
      else if (key == "lambda_max")
        cfg.lambda_max = parse_number(source_name, line_no, value);
      else
        fail(source_name, line_no, "unknown key '" + qualified + "'");
    } else if (section == "grids") {
      if (key == "branch_points")
        cfg.branch_points = parse_int(source_name, line_no, value);
      else if (key == "scan_points")
        cfg.scan_points = parse_int(source_name, line_no, value);
      else if (key == "secondary_steps")
        cfg.secondary_steps = parse_int(source_name, line_no, value);
      else if (key == "profile_points")
        cfg.profile_points = parse_int(source_name, line_no, value);
      else if (key == "spectrum_grid")
        cfg.spectrum_grid = parse_int(source_name, line_no, value);
      else if (key == "scan_cells")
        cfg.scan_cells = parse_int(source_name, line_no, value);
      else
        fail(source_name, line_no, "unknown key '" + qualified + "'");
    } else if (section == "tolerances") {
      if (key == "quad_rel")
        cfg.quad_rel = parse_number(source_name, line_no, value);
      else if (key == "quad_abs")
        cfg.quad_abs = parse_number(source_name, line_no, value);
      else if (key == "theta_ftol")
        cfg.theta_ftol = parse_number(source_name, line_no, value);
      else
        fail(source_name, line_no, "unknown key '" + qualified + "'");
    } else {  // output
      if (key == "dir")
        cfg.out_dir = parse_string(source_name, line_no, value);
      else if (key == "json")
        cfg.json = parse_bool(source_name, line_no, value);
      else if (key == "svg")
        cfg.svg = parse_bool(source_name, line_no, value);
      else if (key == "width")
        cfg.svg_width = parse_int(source_name, line_no, value);
      else if (key == "height")
        cfg.svg_height = parse_int(source_name, line_no, value);
      else
        fail(source_name, line_no, "unknown key '" + qualified + "'");
    }
  }
  validate_config(cfg);
  return cfg;
}

Config parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

Nonlinearity config_nonlinearity(const Config& cfg) {
  if (cfg.nonlinearity == "cubic") return Nonlinearity::cubic();
  if (cfg.nonlinearity == "sine") return Nonlinearity::sine();
  if (cfg.nonlinearity == "custom") {
    if (cfg.coefficients.empty())
      throw ConfigError("custom nonlinearity needs a coefficients list");
    return Nonlinearity::custom(cfg.coefficients);
  }
  throw ConfigError("unknown nonlinearity '" + cfg.nonlinearity + "'");
}

QuadTols config_quad_tols(const Config& cfg) {
  QuadTols t;
  t.rel = cfg.quad_rel;
  t.abs = cfg.quad_abs;
  t.theta_ftol = cfg.theta_ftol;
  return t;
}

}  // namespace bifurcata
