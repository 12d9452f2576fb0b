#include <doctest.h>

#include <cmath>

#include "bifurcata/errors.hpp"
#include "bifurcata/oracle.hpp"
#include "bifurcata/shooting.hpp"

using namespace bifurcata;

TEST_SUITE("oracle") {

TEST_CASE("bisection root solver") {
  // a z tan z = 1 with a = 1: the classic transcendental root.
  auto zf = [](double z) { return z * std::tan(z) - 1.0; };
  CHECK(root_oracle(zf, 0.1, 1.5) ==
        doctest::Approx(0.8603335890193754).epsilon(1e-13));
  CHECK(root_oracle(zf, 3.2, 4.7) ==
        doctest::Approx(3.4256184594817292).epsilon(1e-13));
  CHECK_THROWS_AS(root_oracle([](double z) { return z * z + 1.0; }, -1.0, 1.0),
                  BracketError);
  CHECK_THROWS_AS(root_oracle([](double z) { return z; }, 1.0, -1.0),
                  BracketError);
}

TEST_CASE("tanh-sinh quadrature on smooth and singular integrands") {
  CHECK(tanh_sinh([](double x) { return x * x * x; }, 0.0, 1.0) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(tanh_sinh([](double x) { return std::exp(x); }, -1.0, 2.0) ==
        doctest::Approx(std::exp(2.0) - std::exp(-1.0)).epsilon(1e-12));
  // integrable inverse-square-root endpoint blow-up
  CHECK(tanh_sinh([](double x) { return 1.0 / std::sqrt(1.0 - x * x); }, 0.0,
                  1.0) == doctest::Approx(M_PI / 2.0).epsilon(1e-11));
  CHECK(tanh_sinh([](double x) { return std::log(x); }, 0.0, 1.0) ==
        doctest::Approx(-1.0).epsilon(1e-11));
}

TEST_CASE("time integration conserves the energy") {
  const Nonlinearity nl = Nonlinearity::cubic();
  const IvpResult r = integrate_ivp(nl, 5.0, 0.5, Side::left, 4000);
  CHECK(r.energy_drift < 1e-11);
  CHECK(r.xs.size() == r.us.size());
  CHECK(r.xs.size() == r.uxs.size());
  CHECK(r.xs.front() == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(std::abs(r.xs.back()) < 1e-12);
}

TEST_CASE("time integration converges at fourth order") {
  const Nonlinearity nl = Nonlinearity::cubic();
  const double ref =
      integrate_ivp(nl, 5.0, 0.5, Side::left, 32000).u_end;
  const double e1 =
      std::abs(integrate_ivp(nl, 5.0, 0.5, Side::left, 1000).u_end - ref);
  const double e2 =
      std::abs(integrate_ivp(nl, 5.0, 0.5, Side::left, 2000).u_end - ref);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("sides mirror for equal launch heights") {
  const Nonlinearity nl = Nonlinearity::cubic();
  const IvpResult l = integrate_ivp(nl, 3.0, 0.4, Side::left, 2000);
  const IvpResult r = integrate_ivp(nl, 3.0, 0.4, Side::right, 2000);
  CHECK(l.u_end == doctest::Approx(r.u_end).epsilon(1e-13));
  CHECK(l.ux_end == doctest::Approx(-r.ux_end).epsilon(1e-13));
}

TEST_CASE("matching residual vanishes exactly on matched pairs") {
  const Nonlinearity nl = Nonlinearity::cubic();
  const ShootingContext sc(nl, 1.0);

  const double b_odd = 0.5;
  const double lam_odd = sc.lambda_branch(1, Parity::odd, b_odd);
  const auto r_odd = matching_residual(nl, 1.0, lam_odd, b_odd, -b_odd);
  CHECK(std::abs(r_odd.first) < 1e-9);
  CHECK(std::abs(r_odd.second) < 1e-9);

  const double b_even = 0.5;
  const double lam_even = sc.lambda_branch(1, Parity::even, b_even);
  const auto r_even = matching_residual(nl, 1.0, lam_even, b_even, b_even);
  CHECK(std::abs(r_even.first) < 1e-9);
  CHECK(std::abs(r_even.second) < 1e-9);

  // ... and does not vanish away from the solution set.
  const auto r_off = matching_residual(nl, 1.0, lam_odd, 0.5 * b_odd, b_odd);
  CHECK(std::max(std::abs(r_off.first), std::abs(r_off.second)) > 1e-4);
}

TEST_CASE("solution-set scan structure") {
  const Nonlinearity nl = Nonlinearity::cubic();
  const int n = 81;  // odd: no node lands on beta = 0
  const SolutionScan scan = scan_solution_set(nl, 1.0, 5.0, n, 2000);
  REQUIRE(scan.beta.size() == size_t(n + 1));
  const double b0 = nl.beta0();
  for (size_t i = 0; i < scan.beta.size(); ++i) {
    CHECK(scan.beta[i] > -b0);
    CHECK(scan.beta[i] < b0);
    if (i) CHECK(scan.beta[i] > scan.beta[i - 1]);
  }
  // The solution set is invariant under u(x) -> -u(-x), so the cell set is
  // symmetric under the simultaneous swap-and-negate map
  // (i, j) -> (n-1-j, n-1-i).
  for (const auto& c : scan.cells) {
    CHECK(c.first >= 0);
    CHECK(c.first < n);
    CHECK(c.second >= 0);
    CHECK(c.second < n);
    bool mirrored = false;
    for (const auto& d : scan.cells)
      if (d.first == n - 1 - c.second && d.second == n - 1 - c.first)
        mirrored = true;
    CHECK(mirrored);
  }
  // At lambda = 5 the window holds the trivial pair, both symmetric branch
  // pairs, and the symmetry-broken pairs: several cells must show up.
  CHECK(scan.cells.size() >= 4);
}

TEST_CASE("energy drift guard trips on a too-coarse grid") {
  const Nonlinearity nl = Nonlinearity::cubic();
  CHECK_THROWS_AS(integrate_ivp(nl, 200.0, 0.7, Side::left, 40, 1e-14),
                  EnergyDrift);
}

}  // TEST_SUITE
