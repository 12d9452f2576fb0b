#include <doctest.h>

#include <cmath>

#include "bifurcata/branches.hpp"
#include "bifurcata/errors.hpp"
#include "bifurcata/oracle.hpp"

using namespace bifurcata;

TEST_SUITE("branches") {

TEST_CASE("amplitude grid clusters toward the rim") {
  const double b0 = std::sqrt(0.5);
  BetaGrid g;
  g.n = 50;
  const std::vector<double> grid = make_beta_grid(b0, g);
  REQUIRE(grid.size() == 50);
  for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
  CHECK(grid.front() > 0.0);
  CHECK(grid.back() == doctest::Approx(b0 * (1.0 - 1e-6)).epsilon(1e-12));
  // geometric approach: the gap to the rim shrinks by a constant factor
  const double r1 = (b0 - grid[20]) / (b0 - grid[19]);
  const double r2 = (b0 - grid[40]) / (b0 - grid[39]);
  CHECK(r1 == doctest::Approx(r2).epsilon(1e-6));
  CHECK(r1 < 1.0);

  BetaGrid clipped;
  clipped.n = 30;
  clipped.beta_max = 0.5;
  const std::vector<double> cg = make_beta_grid(b0, clipped);
  REQUIRE(cg.size() == 30);
  CHECK(cg.back() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("primary branch sweep: odd parity") {
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  BetaGrid g;
  g.n = 40;
  g.beta_max = 0.65;
  const auto pts = trace_primary(sc, 1, Parity::odd, +1, g);
  REQUIRE(pts.size() == 40);
  double prev = 0.0;
  for (const auto& p : pts) {
    CHECK(p.lambda > prev);
    prev = p.lambda;
    CHECK(p.k == 1);
    CHECK(p.kind == BranchKind::odd);
    CHECK(p.beta2 == doctest::Approx(-p.beta1).epsilon(1e-15));
    CHECK(p.u1 ==
          doctest::Approx(sc.kernel().eval_G(p.beta2)).epsilon(1e-12));
    CHECK(!p.morse.has_value());
  }
  CHECK(pts.front().lambda > 0.74017388439495957);

  // mirror image: same lambdas, negated amplitudes
  const auto neg = trace_primary(sc, 1, Parity::odd, -1, g);
  REQUIRE(neg.size() == pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    CHECK(neg[i].lambda == doctest::Approx(pts[i].lambda).epsilon(1e-15));
    CHECK(neg[i].beta1 == doctest::Approx(-pts[i].beta1).epsilon(1e-15));
    CHECK(neg[i].beta2 == doctest::Approx(-pts[i].beta2).epsilon(1e-15));
    CHECK(neg[i].u1 == doctest::Approx(-pts[i].u1).epsilon(1e-15));
  }
}

TEST_CASE("primary branch sweep: even parity") {
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  BetaGrid g;
  g.n = 25;
  g.beta_max = 0.6;
  const auto pts = trace_primary(sc, 1, Parity::even, +1, g);
  REQUIRE(pts.size() == 25);
  for (const auto& p : pts) {
    CHECK(p.kind == BranchKind::even);
    CHECK(p.beta2 == doctest::Approx(p.beta1).epsilon(1e-15));
    CHECK(p.D > 0.0);  // even branches are uniformly transversal
  }
  CHECK(pts.front().lambda > M_PI * M_PI);
}

TEST_CASE("traced points satisfy the boundary value problem") {
  const Nonlinearity nl = Nonlinearity::cubic();
  const ShootingContext sc(nl, 1.0);
  BetaGrid g;
  g.n = 8;
  g.beta_max = 0.6;
  for (Parity parity : {Parity::odd, Parity::even}) {
    for (const auto& p : trace_primary(sc, 1, parity, +1, g)) {
      const auto r = matching_residual(nl, 1.0, p.lambda, p.beta1, p.beta2);
      CHECK(std::abs(r.first) < 1e-8);
      CHECK(std::abs(r.second) < 1e-8);
    }
  }
}

TEST_CASE("primary bifurcation points (pinned)") {
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  const auto pts = find_primary_bifurcations(sc, 15.0);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].first == 1);
  CHECK(pts[0].second ==
        doctest::Approx(0.74017388439495957).epsilon(1e-10));
  CHECK(pts[1].first == 2);
  CHECK(pts[1].second == doctest::Approx(M_PI * M_PI).epsilon(1e-10));
  CHECK(pts[2].first == 3);
  CHECK(pts[2].second ==
        doctest::Approx(11.734861829941975).epsilon(1e-10));
  for (size_t i = 1; i < pts.size(); ++i)
    CHECK(pts[i].second > pts[i - 1].second);
}

TEST_CASE("secondary bifurcation point on the first odd branch (pinned)") {
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  const auto bps = find_secondary_bifurcations(sc, 1, 600);
  REQUIRE(bps.size() == 1);
  CHECK(bps[0].k == 1);
  CHECK(bps[0].beta_star ==
        doctest::Approx(0.57549872769938148).epsilon(1e-8));
  CHECK(bps[0].phi_star ==
        doctest::Approx(0.77695197996452703).epsilon(1e-8));
  CHECK(bps[0].lambda_star ==
        doctest::Approx(1.1401871648902806).epsilon(1e-8));
  CHECK(bps[0].u1 ==
        doctest::Approx(-sc.kernel().eval_G(bps[0].beta_star)).epsilon(1e-8));
}

TEST_CASE("reconstructed profiles: symmetry and interface conditions") {
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);

  const double b = 0.45;
  const double lam_o = sc.lambda_branch(1, Parity::odd, b);
  const SolutionProfile po = reconstruct_solution(sc, lam_o, b, -b, 201);
  REQUIRE(po.x.size() == po.u.size());
  REQUIRE(po.x.size() == po.ux.size());
  CHECK(po.x.front() == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(po.x.back() == doctest::Approx(1.0).epsilon(1e-15));
  // interface conditions with a = 1
  CHECK(po.u_left + po.ux_left ==
        doctest::Approx(po.u_right - po.ux_right).epsilon(1e-9));
  CHECK(po.ux_left == doctest::Approx(po.ux_right).epsilon(1e-9));
  // odd solutions: u(-x) = -u(x)
  for (size_t i = 0; i < po.x.size(); ++i) {
    const double xm = -po.x[i];
    for (size_t j = 0; j < po.x.size(); ++j)
      if (std::abs(po.x[j] - xm) < 1e-14)
        CHECK(po.u[j] == doctest::Approx(-po.u[i]).epsilon(1e-10));
  }
  // outer boundaries are reflecting
  CHECK(std::abs(po.ux.front()) < 1e-9);
  CHECK(std::abs(po.ux.back()) < 1e-9);
  CHECK(po.u.front() == doctest::Approx(sc.kernel().eval_G(b)).epsilon(1e-10));

  const double lam_e = sc.lambda_branch(1, Parity::even, b);
  const SolutionProfile pe = reconstruct_solution(sc, lam_e, b, b, 201);
  for (size_t i = 0; i < pe.x.size(); ++i) {
    const double xm = -pe.x[i];
    for (size_t j = 0; j < pe.x.size(); ++j)
      if (std::abs(pe.x[j] - xm) < 1e-14)
        CHECK(pe.u[j] == doctest::Approx(pe.u[i]).epsilon(1e-10));
  }
}

TEST_CASE("reconstructed profile matches direct integration") {
  const Nonlinearity nl = Nonlinearity::cubic();
  const ShootingContext sc(nl, 1.0);
  const double b = 0.5;
  const double lam = sc.lambda_branch(1, Parity::odd, b);
  const SolutionProfile p = reconstruct_solution(sc, lam, b, -b, 101);
  const IvpResult ivp =
      integrate_ivp(nl, lam, sc.kernel().eval_G(b), Side::left, 8000);
  // compare on the left half by locating profile nodes in the dense IVP grid
  for (size_t i = 0; i < p.x.size(); ++i) {
    if (p.x[i] >= 0.0) continue;
    double best = 1e9, bu = 0.0;
    for (size_t j = 0; j < ivp.xs.size(); ++j) {
      if (std::abs(ivp.xs[j] - p.x[i]) < best) {
        best = std::abs(ivp.xs[j] - p.x[i]);
        bu = ivp.us[j];
      }
    }
    if (best < 1e-9) CHECK(p.u[i] == doctest::Approx(bu).epsilon(1e-7));
  }
}

TEST_CASE("short secondary continuation breaks the symmetry") {
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  const auto bps = find_secondary_bifurcations(sc, 1, 400);
  REQUIRE(bps.size() == 1);
  const SecondaryBranch br =
      trace_secondary(sc, bps[0], 2e-3 * sc.beta0(), 12, 15.0);
  CHECK(br.points.size() >= 12);  // both directions contribute
  double max_asym = 0.0;
  for (const auto& p : br.points) {
    CHECK(p.kind == BranchKind::secondary);
    max_asym = std::max(max_asym, std::abs(p.beta1 + p.beta2));
  }
  CHECK(max_asym > 1e-5);
}

}  // TEST_SUITE
