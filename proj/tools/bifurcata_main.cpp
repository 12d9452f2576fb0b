// Command-line frontend: configures a problem, runs the diagram / branch /
// spectrum computations, emits CSV / JSON / SVG files, and runs the
// verification suite.
//
// Exit codes:  0 success (including an empty diagram when lambda_max sits
// below the first bifurcation),  1 verification failures,  2 configuration
// errors (bad flags, bad config file, invalid nonlinearity),  3 numerical
// failures (the message names the failing operation).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bifurcata/branches.hpp"
#include "bifurcata/config.hpp"
#include "bifurcata/diagram_io.hpp"
#include "bifurcata/errors.hpp"
#include "bifurcata/spectrum.hpp"
#include "bifurcata/threads.hpp"
#include "bifurcata/verify.hpp"

namespace {

using namespace bifurcata;

// Same naming scheme as the assembled diagram uses for its branches.
std::string make_branch_id(int k, BranchKind kind, int sign) {
  if (kind == BranchKind::trivial) return "trivial";
  std::string id = (kind == BranchKind::secondary ? "S" : "C");
  id += std::to_string(k);
  if (kind == BranchKind::odd) id += "o";
  if (kind == BranchKind::even) id += "e";
  id += sign < 0 ? "-" : "+";
  return id;
}

struct Selector {
  int k = 0;
  std::string parity;  // "odd" | "even"
  int sign = +1;
  std::vector<double> betas;
  std::vector<double> lambdas;
};

Parity parse_parity(const Selector& sel) {
  if (sel.parity == "odd") return Parity::odd;
  if (sel.parity == "even") return Parity::even;
  throw ConfigError("selector: --parity must be 'odd' or 'even'");
}

void check_selector_core(const Selector& sel) {
  if (sel.k < 1) throw ConfigError("selector: --k must be >= 1");
  if (sel.sign != 1 && sel.sign != -1)
    throw ConfigError("selector: --sign must be +1 or -1");
}

std::filesystem::path out_path(const Config& cfg, const char* name) {
  return std::filesystem::path(cfg.out_dir) / name;
}

void ensure_out_dir(const Config& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec)
    throw std::runtime_error("create output directory '" + cfg.out_dir +
                             "': " + ec.message());
}

// (lambda, beta1, beta2) of one primary-branch point named by the selector,
// through either a beta value or a lambda value.
struct TargetPoint {
  double lambda = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
};

TargetPoint locate_point(const ShootingContext& sc, const Selector& sel,
                         Parity parity, std::optional<double> beta,
                         std::optional<double> lambda) {
  TargetPoint t;
  double b;
  if (beta) {
    b = std::fabs(*beta);
    if (!(b > 0.0) || !(b < sc.beta0()))
      throw ConfigError("selector: --beta must lie in (0, beta0)");
    t.lambda = sc.lambda_branch(sel.k, parity, b);
  } else {
    t.lambda = *lambda;
    if (!(t.lambda > 0.0))
      throw ConfigError("selector: --lambda must be positive");
    b = sc.lambda_to_beta(sel.k, parity, t.lambda);
  }
  t.beta1 = sel.sign * b;
  t.beta2 = parity == Parity::odd ? -t.beta1 : t.beta1;
  return t;
}

int cmd_diagram(const Config& cfg, const ShootingContext& sc, int grid,
                bool with_morse) {
  DiagramOptions opts;
  opts.branch_points = grid > 0 ? grid : cfg.branch_points;
  opts.scan_points = cfg.scan_points;
  opts.secondary_steps = cfg.secondary_steps;
  Diagram dg = assemble_diagram(sc, cfg.k_max, cfg.lambda_max, opts);
  for (const std::string& w : dg.warnings)
    std::cerr << "bifurcata diagram: warning: " << w << "\n";

  if (with_morse) {
    // Per-segment labels: the index is constant between degeneracies, so a
    // thinned subsample of every branch is enough to label the runs.
    struct Slot {
      DiagramBranch* branch;
      size_t point;
    };
    std::vector<Slot> slots;
    for (DiagramBranch& br : dg.branches) {
      const size_t n = br.points.size();
      if (n == 0) continue;
      const size_t stride = std::max<size_t>(1, n / 25);
      for (size_t i = 0; i < n; i += stride) slots.push_back({&br, i});
      if ((n - 1) % stride != 0) slots.push_back({&br, n - 1});
    }
    parallel_for(static_cast<int>(slots.size()), [&](int si) {
      BranchPoint& p = slots[si].branch->points[slots[si].point];
      const SpectrumResult s =
          compute_spectrum(sc, p.lambda, p.beta1, p.beta2, cfg.spectrum_grid);
      if (!s.degenerate) p.morse = s.morse_index;
    });
  }

  ensure_out_dir(cfg);
  write_diagram_csv(dg, out_path(cfg, "diagram.csv").string());
  write_bifpoints_csv(dg, out_path(cfg, "bifpoints.csv").string());
  if (cfg.json) {
    write_diagram_json(dg, out_path(cfg, "diagram.json").string());
    write_bifpoints_json(dg, out_path(cfg, "bifpoints.json").string());
  }
  if (cfg.svg)
    write_diagram_svg(out_path(cfg, "diagram.csv").string(),
                      out_path(cfg, "bifpoints.csv").string(),
                      out_path(cfg, "diagram.svg").string(), cfg.svg_width,
                      cfg.svg_height);
  return 0;
}

int cmd_branch(const Config& cfg, const ShootingContext& sc,
               const Selector& sel, int grid) {
  check_selector_core(sel);
  const Parity parity = parse_parity(sel);

  DiagramBranch br;
  br.k = sel.k;
  br.kind = parity == Parity::odd ? BranchKind::odd : BranchKind::even;
  br.sign = sel.sign;
  br.id = make_branch_id(sel.k, br.kind, sel.sign);

  // the branch exists above its bifurcation value only
  const int n_index = parity == Parity::odd ? 2 * sel.k - 1 : 2 * sel.k;
  bool in_range = false;
  for (const auto& [n, lam] : find_primary_bifurcations(sc, cfg.lambda_max))
    if (n == n_index && lam < cfg.lambda_max) in_range = true;
  if (in_range) {
    BetaGrid bg;
    bg.n = grid > 0 ? grid : cfg.branch_points;
    try {
      bg.beta_max = sc.lambda_to_beta(sel.k, parity, cfg.lambda_max);
    } catch (const NoRootFound&) {
      // lambda_max beyond the resolvable sweep: keep the full ladder
    }
    br.points = trace_primary(sc, sel.k, parity, sel.sign, bg);
  } else {
    std::cerr << "bifurcata branch: " << br.id
              << " does not bifurcate below lambda_max = " << cfg.lambda_max
              << "; writing an empty table\n";
  }

  ensure_out_dir(cfg);
  write_branch_csv(br, out_path(cfg, "branch.csv").string());
  if (cfg.json) write_branch_json(br, out_path(cfg, "branch.json").string());
  return 0;
}

int cmd_bifpoints(const Config& cfg, const ShootingContext& sc,
                  const Selector& sel, int grid) {
  const int scan = grid > 0 ? grid : cfg.scan_points;
  Diagram dg;
  dg.nonlinearity = sc.kernel().nonlinearity().name();
  dg.a = sc.coupling();
  dg.lambda_max = cfg.lambda_max;
  if (sel.k > 0) {
    // canonical (positive-amplitude) symmetry-breaking point of one branch
    for (const BifurcationPoint& bp : find_secondary_bifurcations(sc, sel.k, scan))
      dg.secondary_bifurcations.push_back(bp);
  } else {
    for (const auto& [n, lam] : find_primary_bifurcations(sc, cfg.lambda_max))
      if (n <= 2 * cfg.k_max) dg.primary_bifurcations.emplace_back(n, lam);
    for (int k = 1; k <= cfg.k_max; ++k) {
      const int n_index = 2 * k - 1;
      bool present = false;
      for (const auto& [n, lam] : dg.primary_bifurcations)
        if (n == n_index) present = true;
      if (!present) continue;
      std::vector<BifurcationPoint> roots;
      try {
        roots = find_secondary_bifurcations(sc, k, scan);
      } catch (const NoRootFound&) {
        std::cerr << "bifurcata bifpoints: no symmetry-breaking point found "
                     "on the odd branch k = "
                  << k << "\n";
        continue;
      }
      for (const BifurcationPoint& bp : roots) {
        if (bp.lambda_star > cfg.lambda_max) continue;
        BifurcationPoint neg = bp;
        neg.sign = -1;
        neg.beta_star = -bp.beta_star;
        neg.u1 = -bp.u1;
        dg.secondary_bifurcations.push_back(bp);
        dg.secondary_bifurcations.push_back(neg);
      }
    }
  }
  ensure_out_dir(cfg);
  write_bifpoints_csv(dg, out_path(cfg, "bifpoints.csv").string());
  if (cfg.json)
    write_bifpoints_json(dg, out_path(cfg, "bifpoints.json").string());
  return 0;
}

int cmd_morse(const Config& cfg, const ShootingContext& sc,
              const Selector& sel, int grid) {
  check_selector_core(sel);
  const Parity parity = parse_parity(sel);
  if (sel.betas.empty() == sel.lambdas.empty())
    throw ConfigError(
        "selector: give sample points through --beta or --lambda (not both)");
  const int n_fd = grid > 0 ? grid : cfg.spectrum_grid;

  std::vector<TargetPoint> targets;
  for (double b : sel.betas)
    targets.push_back(locate_point(sc, sel, parity, b, std::nullopt));
  for (double l : sel.lambdas)
    targets.push_back(locate_point(sc, sel, parity, std::nullopt, l));

  std::vector<SpectrumRow> rows(targets.size());
  parallel_for(static_cast<int>(targets.size()), [&](int i) {
    rows[i].lambda = targets[i].lambda;
    rows[i].beta1 = targets[i].beta1;
    rows[i].beta2 = targets[i].beta2;
    rows[i].spec = compute_spectrum(sc, targets[i].lambda, targets[i].beta1,
                                    targets[i].beta2, n_fd);
  });

  ensure_out_dir(cfg);
  write_morse_csv(rows, out_path(cfg, "morse.csv").string());
  if (cfg.json) write_morse_json(rows, out_path(cfg, "morse.json").string());
  return 0;
}

int cmd_profile(const Config& cfg, const ShootingContext& sc,
                const Selector& sel, int grid) {
  check_selector_core(sel);
  const Parity parity = parse_parity(sel);
  if (sel.betas.size() + sel.lambdas.size() != 1)
    throw ConfigError(
        "selector: give exactly one sample point through --beta or --lambda");
  const TargetPoint t =
      sel.betas.empty()
          ? locate_point(sc, sel, parity, std::nullopt, sel.lambdas[0])
          : locate_point(sc, sel, parity, sel.betas[0], std::nullopt);
  const int n_grid = grid > 0 ? grid : cfg.profile_points;
  const SolutionProfile prof =
      reconstruct_solution(sc, t.lambda, t.beta1, t.beta2, n_grid);

  ensure_out_dir(cfg);
  write_profile_csv(prof, out_path(cfg, "profile.csv").string());
  if (cfg.json)
    write_profile_json(prof, out_path(cfg, "profile.json").string());
  return 0;
}

int cmd_verify(const Config& cfg, bool quick, bool acceptance_only) {
  VerifyOptions vo;
  vo.quick = quick;
  vo.acceptance_only = acceptance_only;
  vo.log = &std::cout;
  const std::vector<CheckResult> results = run_verification(cfg, vo);
  if (!quick) {
    ensure_out_dir(cfg);
    write_verify_json(results, out_path(cfg, "verify.json").string());
  }
  int failed = 0;
  std::string failing;
  for (const CheckResult& r : results)
    if (!r.passed) {
      ++failed;
      if (!failing.empty()) failing += ", ";
      failing += r.id;
    }
  if (failed == 0) {
    std::cout << "all " << results.size() << " checks passed\n";
    return 0;
  }
  std::cout << failed << " of " << results.size()
            << " checks failed: " << failing << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Branches, spectra, and bifurcation diagrams of an interface-coupled "
      "two-point boundary value problem"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bifurcata 0.1.0");

  std::string config_path;
  std::string nonlinearity;
  std::vector<double> coefficients;
  double a_flag = 0.0;
  int kmax_flag = 0;
  double lambda_max_flag = 0.0;
  std::string out_flag;
  int grid_flag = 0;
  bool json_flag = false;
  bool svg_flag = false;
  bool morse_flag = false;
  bool acceptance_only = false;
  Selector sel;

  CLI::Option* o_nl = nullptr;
  CLI::Option* o_a = nullptr;
  CLI::Option* o_kmax = nullptr;
  CLI::Option* o_lmax = nullptr;
  CLI::Option* o_out = nullptr;
  CLI::Option* o_coeff = nullptr;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "configuration file (flags override its values)");
    o_nl = sub->add_option("--nonlinearity", nonlinearity,
                           "cubic | sine | custom");
    o_coeff = sub->add_option("--coefficients", coefficients,
                              "custom nonlinearity: f(u) = u*(c0 + c1 u^2 + "
                              "c2 u^4 + ...)")
                  ->delimiter(',');
    o_a = sub->add_option("--a", a_flag, "interface coupling constant (> 0)");
    o_kmax = sub->add_option("--kmax", kmax_flag, "branch pairs to compute");
    o_lmax = sub->add_option("--lambda-max", lambda_max_flag,
                             "upper end of the lambda range");
    o_out = sub->add_option("--out", out_flag, "output directory");
    sub->add_option("--grid", grid_flag,
                    "override the command's main grid size");
    sub->add_flag("--json", json_flag, "also write JSON twins of the CSVs");
    sub->add_flag("--svg", svg_flag, "also render diagram.svg (diagram)");
    return sub;
  };

  CLI::App* c_diagram = add_common(app.add_subcommand(
      "diagram", "full bifurcation diagram: diagram.csv, bifpoints.csv"));
  c_diagram->add_flag("--morse", morse_flag,
                      "label branch segments with Morse indices");
  CLI::App* c_branch = add_common(app.add_subcommand(
      "branch", "one primary branch to branch.csv (selector: --k --parity "
                "--sign)"));
  CLI::App* c_bifpoints = add_common(app.add_subcommand(
      "bifpoints", "bifurcation points to bifpoints.csv (--k limits to one "
                   "odd branch's symmetry-breaking point)"));
  CLI::App* c_morse = add_common(app.add_subcommand(
      "morse", "spectra and Morse indices at selected branch points to "
               "morse.csv"));
  CLI::App* c_profile = add_common(app.add_subcommand(
      "profile", "one solution profile to profile.csv"));
  CLI::App* c_verify = add_common(app.add_subcommand(
      "verify", "full verification suite; writes verify.json, exits 1 on "
                "failures"));
  c_verify->add_flag("--acceptance-only", acceptance_only,
                     "skip the per-module property suites");
  CLI::App* c_selftest = add_common(app.add_subcommand(
      "selftest", "reduced-size verification, log to stdout only"));

  for (CLI::App* sub : {c_branch, c_bifpoints, c_morse, c_profile}) {
    sub->add_option("--k", sel.k, "branch index k >= 1");
    if (sub != c_bifpoints) {
      sub->add_option("--parity", sel.parity, "odd | even");
      sub->add_option("--sign", sel.sign, "+1 or -1 (mirror branch)");
    }
    if (sub == c_morse || sub == c_profile) {
      sub->add_option("--beta", sel.betas, "amplitude sample points")
          ->delimiter(',');
      sub->add_option("--lambda", sel.lambdas, "lambda sample points")
          ->delimiter(',');
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Config cfg;
  try {
    if (!config_path.empty()) cfg = parse_config_file(config_path);
    if (o_nl->count() > 0) cfg.nonlinearity = nonlinearity;
    if (o_coeff->count() > 0) cfg.coefficients = coefficients;
    if (o_a->count() > 0) cfg.a = a_flag;
    if (o_kmax->count() > 0) cfg.k_max = kmax_flag;
    if (o_lmax->count() > 0) cfg.lambda_max = lambda_max_flag;
    if (o_out->count() > 0) cfg.out_dir = out_flag;
    if (json_flag) cfg.json = true;
    if (svg_flag) cfg.svg = true;
    validate_config(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "bifurcata: " << e.what() << "\n";
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    const Nonlinearity nl = [&] {
      try {
        return config_nonlinearity(cfg);
      } catch (const DomainError& e) {
        // an invalid nonlinearity is a configuration problem
        throw ConfigError(e.what());
      }
    }();
    const ShootingContext sc(nl, cfg.a, config_quad_tols(cfg));

    if (cmd == "diagram") return cmd_diagram(cfg, sc, grid_flag, morse_flag);
    if (cmd == "branch") return cmd_branch(cfg, sc, sel, grid_flag);
    if (cmd == "bifpoints") return cmd_bifpoints(cfg, sc, sel, grid_flag);
    if (cmd == "morse") return cmd_morse(cfg, sc, sel, grid_flag);
    if (cmd == "profile") return cmd_profile(cfg, sc, sel, grid_flag);
    if (cmd == "verify") return cmd_verify(cfg, false, acceptance_only);
    if (cmd == "selftest") return cmd_verify(cfg, true, false);
    std::cerr << "bifurcata: unknown command '" << cmd << "'\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "bifurcata " << cmd << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "bifurcata " << cmd << ": numerical failure in " << e.what()
              << "\n";
    return 3;
  }
}
