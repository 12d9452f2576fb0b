#include <doctest.h>

#include <cmath>

#include "bifurcata/errors.hpp"
#include "bifurcata/oracle.hpp"
#include "bifurcata/shooting.hpp"

using namespace bifurcata;

TEST_SUITE("shooting") {

TEST_CASE("interface phase roots (pinned)") {
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  CHECK(sc.beta0() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(sc.solve_phi_k(1, 0.35) ==
        doctest::Approx(0.83885716620757522).epsilon(1e-10));
  // phi_k lives in ((k-1) pi, (k-1/2) pi)
  for (int k = 1; k <= 3; ++k) {
    const double phi = sc.solve_phi_k(k, 0.35);
    CHECK(phi > (k - 1) * M_PI);
    CHECK(phi < (k - 0.5) * M_PI);
  }
}

TEST_CASE("branch lambdas (pinned)") {
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  CHECK(sc.lambda_branch(1, Parity::odd, 0.35) ==
        doctest::Approx(0.83052973069632807).epsilon(1e-10));
  CHECK(sc.lambda_branch(1, Parity::even, 0.35) ==
        doctest::Approx(10.951215869678169).epsilon(1e-10));
  CHECK(sc.lambda_branch(2, Parity::odd, 0.35) ==
        doctest::Approx(13.08524592168604).epsilon(1e-10));
}

TEST_CASE("small-amplitude limits recover the linearized eigenvalues") {
  // beta -> 0: odd branches tend to z_k^2 / f'(0) with a z tan z = 1,
  // even branches to (k pi)^2 / f'(0).
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  auto zf = [](double z) { return z * std::tan(z) - 1.0; };
  const double z1 = root_oracle(zf, 0.1, 1.5);
  const double z2 = root_oracle(zf, 3.2, 4.7);
  CHECK(sc.lambda_branch(1, Parity::odd, 1e-5) ==
        doctest::Approx(z1 * z1).epsilon(1e-6));
  CHECK(sc.lambda_branch(2, Parity::odd, 1e-5) ==
        doctest::Approx(z2 * z2).epsilon(1e-6));
  CHECK(sc.lambda_branch(1, Parity::even, 1e-5) ==
        doctest::Approx(M_PI * M_PI).epsilon(1e-6));
  CHECK(sc.lambda_branch(2, Parity::even, 1e-5) ==
        doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-6));

  // The same limits scale by 1 / f'(0) = 1 / pi for the sine.
  const ShootingContext ss(Nonlinearity::sine(), 1.0);
  CHECK(ss.lambda_branch(1, Parity::odd, 1e-5) ==
        doctest::Approx(z1 * z1 / M_PI).epsilon(1e-6));
}

TEST_CASE("lambda increases with amplitude") {
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  for (Parity p : {Parity::odd, Parity::even}) {
    double prev = 0.0;
    for (double beta = 0.05; beta < 0.7; beta += 0.05) {
      const double lam = sc.lambda_branch(1, p, beta);
      CHECK(lam > prev);
      prev = lam;
    }
  }
}

TEST_CASE("lambda_to_beta inverts lambda_branch") {
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  for (Parity p : {Parity::odd, Parity::even}) {
    for (double beta : {0.1, 0.4, 0.62}) {
      const double lam = sc.lambda_branch(1, p, beta);
      CHECK(sc.lambda_to_beta(1, p, lam) ==
            doctest::Approx(beta).epsilon(1e-10));
    }
  }
}

TEST_CASE("lambda_to_beta rejects lambdas off the branch") {
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  // Below the k = 1 odd limit 0.7401... there is no amplitude.
  CHECK_THROWS_AS(sc.lambda_to_beta(1, Parity::odd, 0.5), NoRootFound);
}

TEST_CASE("interface values match direct integration") {
  const Nonlinearity nl = Nonlinearity::cubic();
  const ShootingContext sc(nl, 1.0);
  const GKernel gk(nl);
  for (double beta : {0.2, 0.5, 0.68}) {
    const double lam = sc.lambda_branch(1, Parity::odd, beta);
    const PQ pq = sc.eval_PQ(lam, beta);
    const IvpResult ivp =
        integrate_ivp(nl, lam, gk.eval_G(beta), Side::left, 4000);
    CHECK(pq.P == doctest::Approx(ivp.u_end + ivp.ux_end).epsilon(1e-8));
    CHECK(pq.Q == doctest::Approx(ivp.ux_end).epsilon(1e-8));
  }
}

TEST_CASE("reported phase satisfies the phase equation") {
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  const double beta = 0.45;
  const double lam = sc.lambda_branch(2, Parity::odd, beta);
  const PQ pq = sc.eval_PQ(lam, beta);
  CHECK(sc.integrator().theta_integral(beta, pq.theta) ==
        doctest::Approx(std::sqrt(lam)).epsilon(1e-10));
}

TEST_CASE("matched pairs zero the determinant components consistently") {
  // On an odd branch (beta, -beta) the first matching component P(beta) -
  // P(-beta) vanishes identically; the branch condition makes Q match too.
  const Nonlinearity nl = Nonlinearity::cubic();
  const ShootingContext sc(nl, 1.0);
  const double beta = 0.55;
  const double lam = sc.lambda_branch(1, Parity::odd, beta);
  const auto r = matching_residual(nl, 1.0, lam, beta, -beta);
  CHECK(std::abs(r.first) < 1e-8);
  CHECK(std::abs(r.second) < 1e-8);
  // The transversality determinant stays away from zero on the branch.
  CHECK(std::abs(sc.eval_D(lam, beta, -beta)) > 1e-3);
}

TEST_CASE("derivative of the phase root matches a difference quotient") {
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  const double beta = 0.4, h = 1e-6;
  const double phi = sc.solve_phi_k(1, beta);
  const double d = sc.dphi_dbeta(beta, phi);
  const double fd =
      (sc.solve_phi_k(1, beta + h) - sc.solve_phi_k(1, beta - h)) /
      (2.0 * h);
  CHECK(d == doctest::Approx(fd).epsilon(1e-5));
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(ShootingContext(Nonlinearity::cubic(), -1.0), DomainError);
  const ShootingContext sc(Nonlinearity::cubic(), 1.0);
  CHECK_THROWS_AS(sc.lambda_branch(0, Parity::odd, 0.3), DomainError);
  CHECK_THROWS_AS(sc.solve_phi_k(0, 0.3), DomainError);
}

}  // TEST_SUITE
