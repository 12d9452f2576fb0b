#include "bifurcata/diagram_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bifurcata/errors.hpp"

namespace bifurcata {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  return out;
}

void point_row(std::ostream& out, const DiagramBranch& br,
               const BranchPoint& p) {
  out << br.id << ',' << p.k << ',' << branch_kind_name(p.kind) << ','
      << br.sign << ',' << num(p.lambda) << ',' << num(p.beta1) << ','
      << num(p.beta2) << ',' << num(p.u1) << ',' << num(p.D) << ',';
  if (p.morse) out << *p.morse;
  out << '\n';
}

constexpr const char* kPointHeader =
    "branch_id,k,kind,sign,lambda,beta1,beta2,u1,D,morse";

// --- minimal JSON building blocks ---------------------------------------

std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
    } else {
      out += c;
    }
  }
  out += '"';
  return out;
}

void json_points(std::ostream& out, const std::vector<BranchPoint>& pts,
                 const char* indent) {
  out << "[";
  for (size_t i = 0; i < pts.size(); ++i) {
    const BranchPoint& p = pts[i];
    out << (i ? "," : "") << "\n" << indent << "{\"lambda\": " << num(p.lambda)
        << ", \"beta1\": " << num(p.beta1) << ", \"beta2\": " << num(p.beta2)
        << ", \"u1\": " << num(p.u1) << ", \"D\": " << num(p.D)
        << ", \"morse\": ";
    if (p.morse)
      out << *p.morse;
    else
      out << "null";
    out << "}";
  }
  out << "\n" << indent << "]";
}

}  // namespace

void write_diagram_csv(const Diagram& dg, const std::string& path) {
  std::ofstream out = open_out(path);
  out << kPointHeader << '\n';
  for (const DiagramBranch& br : dg.branches)
    for (const BranchPoint& p : br.points) point_row(out, br, p);
}

void write_branch_csv(const DiagramBranch& br, const std::string& path) {
  std::ofstream out = open_out(path);
  out << kPointHeader << '\n';
  for (const BranchPoint& p : br.points) point_row(out, br, p);
}

void write_bifpoints_csv(const Diagram& dg, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "type,k,sign,lambda,beta,phi,u1\n";
  for (const auto& [n, lam] : dg.primary_bifurcations)
    out << "primary," << n << ",0," << num(lam) << ",0,,0\n";
  for (const BifurcationPoint& bp : dg.secondary_bifurcations)
    out << "secondary," << bp.k << ',' << bp.sign << ','
        << num(bp.lambda_star) << ',' << num(bp.beta_star) << ','
        << num(bp.phi_star) << ',' << num(bp.u1) << '\n';
}

void write_profile_csv(const SolutionProfile& p, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "x,u,ux\n";
  for (size_t i = 0; i < p.x.size(); ++i)
    out << num(p.x[i]) << ',' << num(p.u[i]) << ',' << num(p.ux[i]) << '\n';
}

void write_morse_csv(const std::vector<SpectrumRow>& rows,
                     const std::string& path) {
  std::ofstream out = open_out(path);
  out << "lambda,beta1,beta2,morse,degenerate,zero_tolerance";
  for (int i = 0; i < 8; ++i) out << ",mu" << i;
  out << '\n';
  for (const SpectrumRow& r : rows) {
    out << num(r.lambda) << ',' << num(r.beta1) << ',' << num(r.beta2) << ','
        << r.spec.morse_index << ',' << (r.spec.degenerate ? 1 : 0) << ','
        << num(r.spec.zero_tolerance);
    for (int i = 0; i < 8; ++i) {
      out << ',';
      if (i < static_cast<int>(r.spec.eigenvalues.size()))
        out << num(r.spec.eigenvalues[static_cast<size_t>(i)]);
    }
    out << '\n';
  }
}

void write_diagram_json(const Diagram& dg, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "{\n";
  out << "  \"nonlinearity\": " << jstr(dg.nonlinearity) << ",\n";
  out << "  \"a\": " << num(dg.a) << ",\n";
  out << "  \"lambda_max\": " << num(dg.lambda_max) << ",\n";
  out << "  \"warnings\": [";
  for (size_t i = 0; i < dg.warnings.size(); ++i)
    out << (i ? ", " : "") << jstr(dg.warnings[i]);
  out << "],\n";
  out << "  \"primary_bifurcations\": [";
  for (size_t i = 0; i < dg.primary_bifurcations.size(); ++i) {
    const auto& [n, lam] = dg.primary_bifurcations[i];
    out << (i ? "," : "") << "\n    {\"n\": " << n
        << ", \"lambda\": " << num(lam) << "}";
  }
  out << "\n  ],\n";
  out << "  \"secondary_bifurcations\": [";
  for (size_t i = 0; i < dg.secondary_bifurcations.size(); ++i) {
    const BifurcationPoint& bp = dg.secondary_bifurcations[i];
    out << (i ? "," : "") << "\n    {\"k\": " << bp.k
        << ", \"sign\": " << bp.sign << ", \"lambda\": " << num(bp.lambda_star)
        << ", \"beta\": " << num(bp.beta_star)
        << ", \"phi\": " << num(bp.phi_star) << ", \"u1\": " << num(bp.u1)
        << "}";
  }
  out << "\n  ],\n";
  out << "  \"branches\": [";
  for (size_t b = 0; b < dg.branches.size(); ++b) {
    const DiagramBranch& br = dg.branches[b];
    out << (b ? "," : "") << "\n    {\"id\": " << jstr(br.id)
        << ", \"k\": " << br.k << ", \"kind\": \"" << branch_kind_name(br.kind)
        << "\", \"sign\": " << br.sign << ", \"points\": ";
    json_points(out, br.points, "      ");
    out << "}";
  }
  out << "\n  ]\n}\n";
}

void write_branch_json(const DiagramBranch& br, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "{\n  \"id\": " << jstr(br.id) << ",\n  \"k\": " << br.k
      << ",\n  \"kind\": \"" << branch_kind_name(br.kind)
      << "\",\n  \"sign\": " << br.sign << ",\n  \"points\": ";
  json_points(out, br.points, "    ");
  out << "\n}\n";
}

void write_bifpoints_json(const Diagram& dg, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "{\n  \"primary\": [";
  for (size_t i = 0; i < dg.primary_bifurcations.size(); ++i) {
    const auto& [n, lam] = dg.primary_bifurcations[i];
    out << (i ? "," : "") << "\n    {\"n\": " << n
        << ", \"lambda\": " << num(lam) << "}";
  }
  out << "\n  ],\n  \"secondary\": [";
  for (size_t i = 0; i < dg.secondary_bifurcations.size(); ++i) {
    const BifurcationPoint& bp = dg.secondary_bifurcations[i];
    out << (i ? "," : "") << "\n    {\"k\": " << bp.k
        << ", \"sign\": " << bp.sign << ", \"lambda\": " << num(bp.lambda_star)
        << ", \"beta\": " << num(bp.beta_star)
        << ", \"phi\": " << num(bp.phi_star) << ", \"u1\": " << num(bp.u1)
        << "}";
  }
  out << "\n  ]\n}\n";
}

void write_profile_json(const SolutionProfile& p, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "{\n  \"lambda\": " << num(p.lambda)
      << ",\n  \"beta1\": " << num(p.beta1)
      << ",\n  \"beta2\": " << num(p.beta2)
      << ",\n  \"u_left\": " << num(p.u_left)
      << ",\n  \"u_right\": " << num(p.u_right)
      << ",\n  \"ux_left\": " << num(p.ux_left)
      << ",\n  \"ux_right\": " << num(p.ux_right) << ",\n  \"samples\": [";
  for (size_t i = 0; i < p.x.size(); ++i)
    out << (i ? "," : "") << "\n    {\"x\": " << num(p.x[i])
        << ", \"u\": " << num(p.u[i]) << ", \"ux\": " << num(p.ux[i]) << "}";
  out << "\n  ]\n}\n";
}

void write_morse_json(const std::vector<SpectrumRow>& rows,
                      const std::string& path) {
  std::ofstream out = open_out(path);
  out << "[";
  for (size_t r = 0; r < rows.size(); ++r) {
    const SpectrumRow& row = rows[r];
    out << (r ? "," : "") << "\n  {\"lambda\": " << num(row.lambda)
        << ", \"beta1\": " << num(row.beta1)
        << ", \"beta2\": " << num(row.beta2)
        << ", \"morse\": " << row.spec.morse_index << ", \"degenerate\": "
        << (row.spec.degenerate ? "true" : "false")
        << ", \"zero_tolerance\": " << num(row.spec.zero_tolerance)
        << ", \"eigenvalues\": [";
    for (size_t i = 0; i < row.spec.eigenvalues.size(); ++i)
      out << (i ? ", " : "") << num(row.spec.eigenvalues[i]);
    out << "]}";
  }
  out << "\n]\n";
}

// --- SVG rendering from the CSV files ------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int col(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    throw ConfigError("csv column '" + name + "' not found");
  }
};

Table read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open csv file '" + path + "'");
  Table t;
  std::string line;
  if (!std::getline(in, line))
    throw ConfigError("empty csv file '" + path + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  t.header = split_csv_line(line);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    t.rows.push_back(split_csv_line(line));
  }
  return t;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// largest "nice" step (1, 2, or 5 times a power of ten) giving <= n ticks
double nice_step(double range, int n) {
  const double raw = range / n;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (const double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw) return mag * m;
  }
  return 10.0 * mag;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v + 0.0);  // +0.0 kills negative zero
  return buf;
}

const char* kind_color(const std::string& kind) {
  if (kind == "odd") return "#1f77b4";
  if (kind == "even") return "#d62728";
  if (kind == "secondary") return "#2ca02c";
  return "#888888";  // trivial
}

}  // namespace

void write_diagram_svg(const std::string& diagram_csv,
                       const std::string& bifpoints_csv,
                       const std::string& svg_path, int width, int height) {
  const Table data = read_csv(diagram_csv);
  const Table bifs = read_csv(bifpoints_csv);

  const int c_id = data.col("branch_id");
  const int c_kind = data.col("kind");
  const int c_lam = data.col("lambda");
  const int c_u1 = data.col("u1");
  const int c_morse = data.col("morse");

  // data ranges
  double lam_max = 0.0;
  double u_max = 0.0;
  for (const auto& row : data.rows) {
    lam_max = std::max(lam_max, std::stod(row[static_cast<size_t>(c_lam)]));
    u_max = std::max(u_max, std::abs(std::stod(row[static_cast<size_t>(c_u1)])));
  }
  const int b_lam = bifs.col("lambda");
  const int b_u1 = bifs.col("u1");
  const int b_type = bifs.col("type");
  for (const auto& row : bifs.rows)
    lam_max = std::max(lam_max, std::stod(row[static_cast<size_t>(b_lam)]));
  if (lam_max <= 0.0) lam_max = 1.0;
  if (u_max <= 0.0) u_max = 1.0;
  lam_max *= 1.02;
  u_max *= 1.08;

  const double ml = 62, mr = 18, mt = 18, mb = 46;
  const double pw = width - ml - mr;
  const double ph = height - mt - mb;
  const auto X = [&](double lam) { return ml + pw * (lam / lam_max); };
  const auto Y = [&](double u) { return mt + ph * (0.5 - 0.5 * u / u_max); };

  std::ofstream out = open_out(svg_path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";

  // gridlines and ticks
  out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
  const double xstep = nice_step(lam_max, 8);
  for (double v = 0.0; v <= lam_max + 1e-12 * lam_max; v += xstep) {
    const double x = X(v);
    out << "<line x1=\"" << px(x) << "\" y1=\"" << px(mt) << "\" x2=\""
        << px(x) << "\" y2=\"" << px(mt + ph)
        << "\" stroke=\"#e5e5e5\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << px(x) << "\" y=\"" << px(mt + ph + 18)
        << "\" text-anchor=\"middle\">" << tick_label(v) << "</text>\n";
  }
  const double ystep = nice_step(2.0 * u_max, 8);
  for (double v = ystep * std::ceil(-u_max / ystep); v <= u_max + 1e-12;
       v += ystep) {
    const double y = Y(v);
    out << "<line x1=\"" << px(ml) << "\" y1=\"" << px(y) << "\" x2=\""
        << px(ml + pw) << "\" y2=\"" << px(y)
        << "\" stroke=\"#e5e5e5\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << px(ml - 8) << "\" y=\"" << px(y + 4)
        << "\" text-anchor=\"end\">" << tick_label(v) << "</text>\n";
  }
  out << "<text x=\"" << px(ml + pw / 2) << "\" y=\"" << px(mt + ph + 38)
      << "\" text-anchor=\"middle\" font-style=\"italic\">lambda</text>\n";
  out << "<text x=\"14\" y=\"" << px(mt + ph / 2)
      << "\" text-anchor=\"middle\" font-style=\"italic\" transform=\"rotate(-90 "
      << "14 " << px(mt + ph / 2) << ")\">u(1)</text>\n";
  out << "</g>\n";

  // axes frame
  out << "<rect x=\"" << px(ml) << "\" y=\"" << px(mt) << "\" width=\""
      << px(pw) << "\" height=\"" << px(ph)
      << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  // branches, in file order; rows of one branch are contiguous
  size_t i = 0;
  while (i < data.rows.size()) {
    const std::string id = data.rows[i][static_cast<size_t>(c_id)];
    const std::string kind = data.rows[i][static_cast<size_t>(c_kind)];
    size_t j = i;
    std::ostringstream pts;
    // morse labels: runs of identical non-empty values
    std::vector<std::pair<size_t, size_t>> runs;  // [begin, end)
    size_t run_begin = i;
    std::string run_val = data.rows[i][static_cast<size_t>(c_morse)];
    while (j < data.rows.size() &&
           data.rows[j][static_cast<size_t>(c_id)] == id) {
      const double lam = std::stod(data.rows[j][static_cast<size_t>(c_lam)]);
      const double u1 = std::stod(data.rows[j][static_cast<size_t>(c_u1)]);
      pts << (j > i ? " " : "") << px(X(lam)) << ',' << px(Y(u1));
      const std::string& mv = data.rows[j][static_cast<size_t>(c_morse)];
      if (mv != run_val) {
        runs.emplace_back(run_begin, j);
        run_begin = j;
        run_val = mv;
      }
      ++j;
    }
    runs.emplace_back(run_begin, j);
    const bool dashed = (kind == "trivial");
    out << "<polyline fill=\"none\" stroke=\"" << kind_color(kind)
        << "\" stroke-width=\"1.6\""
        << (dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\""
        << pts.str() << "\"/>\n";
    for (const auto& [rb, re] : runs) {
      const std::string& mv = data.rows[rb][static_cast<size_t>(c_morse)];
      if (mv.empty()) continue;
      const size_t mid = rb + (re - rb) / 2;
      const double lam = std::stod(data.rows[mid][static_cast<size_t>(c_lam)]);
      const double u1 = std::stod(data.rows[mid][static_cast<size_t>(c_u1)]);
      out << "<text x=\"" << px(X(lam)) << "\" y=\"" << px(Y(u1) - 7)
          << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
          << kind_color(kind) << "\" text-anchor=\"middle\">m=" << mv
          << "</text>\n";
    }
    i = j;
  }

  // bifurcation markers
  for (const auto& row : bifs.rows) {
    const double x = X(std::stod(row[static_cast<size_t>(b_lam)]));
    const double y = Y(std::stod(row[static_cast<size_t>(b_u1)]));
    if (row[static_cast<size_t>(b_type)] == "primary") {
      out << "<circle cx=\"" << px(x) << "\" cy=\"" << px(y)
          << "\" r=\"4\" fill=\"#000000\"/>\n";
    } else {
      out << "<circle cx=\"" << px(x) << "\" cy=\"" << px(y)
          << "\" r=\"4\" fill=\"#ffffff\" stroke=\"#000000\""
          << " stroke-width=\"1.5\"/>\n";
    }
  }

  // legend
  const struct {
    const char* label;
    const char* kind;
  } legend[] = {{"trivial", "trivial"},
                {"odd", "odd"},
                {"even", "even"},
                {"secondary", "secondary"}};
  double ly = mt + 10;
  for (const auto& item : legend) {
    out << "<line x1=\"" << px(ml + pw - 120) << "\" y1=\"" << px(ly)
        << "\" x2=\"" << px(ml + pw - 96) << "\" y2=\"" << px(ly)
        << "\" stroke=\"" << kind_color(item.kind) << "\" stroke-width=\"2\""
        << (std::string(item.kind) == "trivial"
                ? " stroke-dasharray=\"6 4\""
                : "")
        << "/>\n";
    out << "<text x=\"" << px(ml + pw - 90) << "\" y=\"" << px(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\""
        << " fill=\"#333333\">" << item.label << "</text>\n";
    ly += 18;
  }

  out << "</svg>\n";
}

}  // namespace bifurcata
