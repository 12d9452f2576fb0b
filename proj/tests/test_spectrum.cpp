#include <doctest.h>

#include <cmath>

#include "bifurcata/errors.hpp"
#include "bifurcata/shooting.hpp"
#include "bifurcata/spectrum.hpp"

using namespace bifurcata;

TEST_SUITE("spectrum") {

TEST_CASE("trivial spectrum closed forms (pinned)") {
  // Around u == 0 the eigenvalues are lambda f'(0) - nu with nu in
  // {0, z_1^2, pi^2, z_2^2, (2 pi)^2, ...}, z_k the roots of a z tan z = 1.
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  const auto mu = trivial_eigenvalues(sc, 5.0, 6);
  REQUIRE(mu.size() == 6);
  CHECK(mu[0] == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(mu[1] == doctest::Approx(4.2598261156050299).epsilon(1e-12));
  CHECK(mu[2] == doctest::Approx(5.0 - M_PI * M_PI).epsilon(1e-12));
  CHECK(mu[3] == doctest::Approx(-6.7348618299419751).epsilon(1e-12));
  CHECK(mu[4] == doctest::Approx(5.0 - 4.0 * M_PI * M_PI).epsilon(1e-12));
  CHECK(mu[5] == doctest::Approx(-36.438807847570459).epsilon(1e-12));
  for (size_t i = 1; i < mu.size(); ++i) CHECK(mu[i] < mu[i - 1]);

  // The sine problem scales the same ladder by f'(0) = pi.
  const ShootingContext ss(Nonlinearity::sine(), 1.0);
  const auto ms = trivial_eigenvalues(ss, 5.0, 3);
  CHECK(ms[0] == doctest::Approx(5.0 * M_PI).epsilon(1e-12));
  // mu_1 = lambda f'(0) - z_1^2 regardless of the nonlinearity
  CHECK(ms[1] ==
        doctest::Approx(5.0 * M_PI - 0.74017388439495957).epsilon(1e-10));
}

TEST_CASE("discrete spectrum converges to the closed forms") {
  // Second differences converge at order two; the extrapolated values and
  // their reported error estimates must both behave.
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  const auto exact = trivial_eigenvalues(sc, 2.0, 4);
  const SpectrumResult s = compute_spectrum(sc, 2.0, 0.0, 0.0, 1600, 4);
  REQUIRE(s.eigenvalues.size() >= 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(s.eigenvalues[i] == doctest::Approx(exact[i]).epsilon(1e-6));
    CHECK(s.errors[i] < 1e-4);
  }
}

TEST_CASE("morse index switches across the symmetry-breaking point") {
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  // lambda* = 1.1401871... on the first odd branch; beta* = 0.57549...
  const double b_lo = 0.5;   // lambda = 0.9793 < lambda*
  const double b_hi = 0.62;  // lambda = 1.3143 > lambda*
  const double lam_lo = sc.lambda_branch(1, Parity::odd, b_lo);
  const double lam_hi = sc.lambda_branch(1, Parity::odd, b_hi);
  const SpectrumResult lo = compute_spectrum(sc, lam_lo, b_lo, -b_lo, 1200, 6);
  const SpectrumResult hi = compute_spectrum(sc, lam_hi, b_hi, -b_hi, 1200, 6);
  CHECK(lo.morse_index == 1);
  CHECK(!lo.degenerate);
  CHECK(hi.morse_index == 0);
  CHECK(!hi.degenerate);
}

TEST_CASE("even branch solutions carry index two") {
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  const double b = 0.4;
  const double lam = sc.lambda_branch(1, Parity::even, b);
  const SpectrumResult s = compute_spectrum(sc, lam, b, b, 1200, 6);
  CHECK(s.morse_index == 2);
  CHECK(!s.degenerate);
}

TEST_CASE("cross-check: matching roots, oscillation count, end signs") {
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  const double b = 0.5;
  const double lam = sc.lambda_branch(1, Parity::odd, b);
  const SpectrumResult s = compute_spectrum(sc, lam, b, -b, 1600, 6);
  const auto checks = eigen_cross_check(sc, lam, b, -b, s, 4, 4000);
  REQUIRE(checks.size() == 4);
  for (size_t r = 0; r < checks.size(); ++r) {
    CHECK(checks[r].mu_fd ==
          doctest::Approx(checks[r].mu_shoot).epsilon(1e-6));
    CHECK(checks[r].zeros == int(r));
    // psi(-1) psi(1) is positive exactly for even oscillation counts
    if (r % 2 == 0)
      CHECK(checks[r].end_product > 0.0);
    else
      CHECK(checks[r].end_product < 0.0);
  }
}

TEST_CASE("spectrum input validation") {
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  CHECK_THROWS_AS(compute_spectrum(sc, -1.0, 0.1, 0.1, 400, 4), DomainError);
  CHECK_THROWS_AS(compute_spectrum(sc, 1.0, 0.9, 0.1, 400, 4), DomainError);
}

}  // TEST_SUITE
