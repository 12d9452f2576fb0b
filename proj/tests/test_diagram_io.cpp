#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "bifurcata/diagram_io.hpp"

using namespace bifurcata;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

struct TempDir {
  std::string path;
  TempDir() {
    char tmpl[] = "/tmp/bifurcata_io_XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    path = tmpl;
  }
  std::string file(const std::string& name) const { return path + "/" + name; }
};

Diagram sample_diagram() {
  Diagram dg;
  dg.nonlinearity = "cubic";
  dg.a = 1.0;
  dg.lambda_max = 15.0;

  DiagramBranch trivial;
  trivial.id = "trivial";
  trivial.k = 0;
  trivial.kind = BranchKind::trivial;
  trivial.sign = 0;
  for (int i = 0; i < 3; ++i) {
    BranchPoint p;
    p.lambda = 5.0 * i;
    p.kind = BranchKind::trivial;
    trivial.points.push_back(p);
  }
  dg.branches.push_back(trivial);

  DiagramBranch s1;
  s1.id = "S1+";
  s1.k = 1;
  s1.kind = BranchKind::odd;
  s1.sign = 1;
  for (int i = 0; i < 3; ++i) {
    BranchPoint p;
    p.lambda = 1.0 + i / 3.0;  // exercises 17-digit round-tripping
    p.beta1 = 0.1 * (i + 1);
    p.beta2 = -p.beta1;
    p.u1 = -0.11 * (i + 1);
    p.k = 1;
    p.kind = BranchKind::odd;
    p.D = -0.5;
    if (i == 1) p.morse = 1;  // mixed present/absent labels
    s1.points.push_back(p);
  }
  dg.branches.push_back(s1);

  dg.primary_bifurcations = {{1, 0.74017388439495957}, {2, 9.869604401089358}};
  BifurcationPoint bp;
  bp.k = 1;
  bp.beta_star = 0.57549872769938148;
  bp.phi_star = 0.77695197996452703;
  bp.lambda_star = 1.1401871648902806;
  bp.u1 = -0.647274553843724;
  bp.sign = +1;
  dg.secondary_bifurcations.push_back(bp);
  bp.sign = -1;
  bp.u1 = -bp.u1;
  dg.secondary_bifurcations.push_back(bp);
  return dg;
}

}  // namespace

TEST_SUITE("diagram-io") {

TEST_CASE("diagram CSV: header, rows, morse blanks, determinism") {
  const TempDir dir;
  const Diagram dg = sample_diagram();
  write_diagram_csv(dg, dir.file("a.csv"));
  write_diagram_csv(dg, dir.file("b.csv"));
  const std::string a = slurp(dir.file("a.csv"));
  CHECK(a == slurp(dir.file("b.csv")));  // byte-identical

  const auto ls = lines_of(a);
  REQUIRE(ls.size() == 7);  // header + 3 + 3
  CHECK(ls[0] == "branch_id,k,kind,sign,lambda,beta1,beta2,u1,D,morse");
  CHECK(ls[1] == "trivial,0,trivial,0,0,0,0,0,0,");
  // morse present only on the middle S1+ row
  CHECK(ls[4].back() == ',');
  CHECK(ls[5].substr(ls[5].size() - 2) == ",1");
  CHECK(ls[6].back() == ',');

  // 17-digit serialization survives a strtod round trip
  std::istringstream row(ls[5]);
  std::string cell;
  for (int i = 0; i < 5; ++i) std::getline(row, cell, ',');
  CHECK(std::strtod(cell.c_str(), nullptr) == 1.0 + 1.0 / 3.0);
  CHECK(a.find("1.3333333333333333") != std::string::npos);
}

TEST_CASE("bifurcation point CSV: primary and secondary row shapes") {
  const TempDir dir;
  write_bifpoints_csv(sample_diagram(), dir.file("bif.csv"));
  const auto ls = lines_of(slurp(dir.file("bif.csv")));
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] == "type,k,sign,lambda,beta,phi,u1");
  CHECK(ls[1] == "primary,1,0,0.74017388439495957,0,,0");
  CHECK(ls[2] == "primary,2,0,9.8696044010893580,0,,0");
  CHECK(ls[3].substr(0, 12) == "secondary,1,");
  CHECK(ls[3].find("1.1401871648902806") != std::string::npos);
  CHECK(ls[3].find("0.57549872769938148") != std::string::npos);
}

TEST_CASE("profile CSV") {
  const TempDir dir;
  SolutionProfile p;
  p.x = {-1.0, -0.5, 0.5, 1.0};
  p.u = {0.25, 0.5, -0.5, -0.25};
  p.ux = {0.0, 0.125, 0.125, 0.0};
  p.lambda = 2.0;
  p.beta1 = 0.3;
  p.beta2 = -0.3;
  write_profile_csv(p, dir.file("p.csv"));
  const auto ls = lines_of(slurp(dir.file("p.csv")));
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] == "x,u,ux");
  CHECK(ls[1] == "-1,0.25,0");
  CHECK(ls[2] == "-0.5,0.5,0.125");
}

TEST_CASE("morse CSV pads eigenvalue columns") {
  const TempDir dir;
  SpectrumRow row;
  row.lambda = 1.0;
  row.beta1 = 0.5;
  row.beta2 = -0.5;
  row.spec.eigenvalues = {0.25, -0.5};
  row.spec.errors = {1e-9, 1e-9};
  row.spec.morse_index = 1;
  row.spec.degenerate = false;
  row.spec.zero_tolerance = 1e-8;
  row.spec.n = 2000;
  write_morse_csv({row}, dir.file("m.csv"));
  const auto ls = lines_of(slurp(dir.file("m.csv")));
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] ==
        "lambda,beta1,beta2,morse,degenerate,zero_tolerance,mu0,mu1,mu2,mu3,"
        "mu4,mu5,mu6,mu7");
  // two eigenvalues, six blanks
  CHECK(ls[1].substr(ls[1].size() - 6) == ",,,,,,");
  CHECK(ls[1].find(",0.25,-0.5,") != std::string::npos);
}

TEST_CASE("JSON twins parse and mirror the data") {
  const TempDir dir;
  const Diagram dg = sample_diagram();
  write_diagram_json(dg, dir.file("d.json"));
  write_bifpoints_json(dg, dir.file("b.json"));

  const auto dj = nlohmann::json::parse(slurp(dir.file("d.json")));
  CHECK(dj["nonlinearity"] == "cubic");
  CHECK(dj["a"] == 1.0);
  CHECK(dj["lambda_max"] == 15.0);
  REQUIRE(dj["branches"].size() == 2);
  CHECK(dj["branches"][0]["id"] == "trivial");
  CHECK(dj["branches"][1]["id"] == "S1+");
  REQUIRE(dj["branches"][1]["points"].size() == 3);
  const auto& pt = dj["branches"][1]["points"][1];
  CHECK(pt["lambda"].get<double>() == 1.0 + 1.0 / 3.0);
  CHECK(pt["morse"].get<int>() == 1);
  CHECK(dj["branches"][1]["points"][0]["morse"].is_null());

  const auto bj = nlohmann::json::parse(slurp(dir.file("b.json")));
  REQUIRE(bj["primary"].size() == 2);
  CHECK(bj["primary"][0]["k"] == 1);
  REQUIRE(bj["secondary"].size() == 2);
  CHECK(bj["secondary"][0]["lambda"].get<double>() == 1.1401871648902806);

  // determinism for the JSON writers too
  write_diagram_json(dg, dir.file("d2.json"));
  CHECK(slurp(dir.file("d.json")) == slurp(dir.file("d2.json")));
}

TEST_CASE("SVG renders from the CSV files alone") {
  const TempDir dir;
  const Diagram dg = sample_diagram();
  write_diagram_csv(dg, dir.file("d.csv"));
  write_bifpoints_csv(dg, dir.file("b.csv"));
  write_diagram_svg(dir.file("d.csv"), dir.file("b.csv"), dir.file("plot.svg"),
                    900, 600);
  const std::string svg = slurp(dir.file("plot.svg"));
  CHECK(svg.substr(0, 4) == "<svg");
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("width=\"900\"") != std::string::npos);
  write_diagram_svg(dir.file("d.csv"), dir.file("b.csv"), dir.file("p2.svg"),
                    900, 600);
  CHECK(svg == slurp(dir.file("p2.svg")));
}

}  // TEST_SUITE
