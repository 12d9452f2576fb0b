#include <doctest.h>

#include <cmath>

#include "bifurcata/errors.hpp"
#include "bifurcata/nonlinearity.hpp"
#include "bifurcata/oracle.hpp"
#include "bifurcata/quadrature.hpp"

using namespace bifurcata;

TEST_SUITE("quadrature") {

TEST_CASE("kernel values for the cubic (pinned against the closed form)") {
  // For f(u) = u - u^3 the map u -> sqrt(F(u)) inverts in closed form:
  // u^2 = 1 - sqrt(1 - 2 v^2), so G(1/2) solves u^2 - u^4/2 = 1/4.
  const GKernel gk(Nonlinearity::cubic());
  const double u = std::sqrt(1.0 - std::sqrt(0.5));
  CHECK(gk.eval_G(0.5) == doctest::Approx(u).epsilon(1e-14));
  CHECK(gk.eval_G(0.5) ==
        doctest::Approx(0.54119610014619701).epsilon(1e-14));
  const GDerivs d = gk.eval_G_derivs(0.5);
  CHECK(d.G == doctest::Approx(0.54119610014619701).epsilon(1e-14));
  CHECK(d.G1 == doctest::Approx(1.3065629648763766).epsilon(1e-13));
  CHECK(d.G2 == doctest::Approx(2.0719298296065571).epsilon(1e-12));
  // G' = v / f(G)
  CHECK(d.G1 == doctest::Approx(0.5 / (u - u * u * u)).epsilon(1e-13));
}

TEST_CASE("kernel is odd and increasing") {
  for (const Nonlinearity& nl :
       {Nonlinearity::cubic(), Nonlinearity::sine()}) {
    const GKernel gk(nl);
    const double b0 = gk.beta0();
    double prev = -1.0;
    for (int i = -9; i <= 9; ++i) {
      const double v = 0.1 * i * b0;
      CHECK(gk.eval_G(-v) == doctest::Approx(-gk.eval_G(v)).epsilon(1e-15));
      CHECK(gk.eval_G(v) > prev);
      prev = gk.eval_G(v);
      CHECK(gk.eval_G_derivs(v).G1 > 0.0);
    }
    CHECK(std::abs(gk.eval_G(0.0)) < 1e-15);
  }
}

TEST_CASE("kernel round trip against the defining map") {
  for (const Nonlinearity& nl :
       {Nonlinearity::cubic(), Nonlinearity::sine(),
        Nonlinearity::custom({1.0, -0.5, -0.5})}) {
    const GKernel gk(nl);
    const double b0 = gk.beta0();
    for (int i = 1; i <= 19; ++i) {
      const double v = 0.05 * i * b0;
      const double u = gk.eval_G(v);
      CHECK(std::sqrt(nl.F(u)) == doctest::Approx(v).epsilon(1e-12));
    }
  }
}

TEST_CASE("kernel derivatives match difference quotients") {
  const GKernel gk(Nonlinearity::cubic());
  const double h = 1e-6;
  for (double v : {0.001, 0.01, 0.1, 0.3, 0.5, 0.65}) {
    const GDerivs d = gk.eval_G_derivs(v);
    const double g1_fd = (gk.eval_G(v + h) - gk.eval_G(v - h)) / (2.0 * h);
    const double g2_fd =
        (gk.eval_G(v + h) - 2.0 * gk.eval_G(v) + gk.eval_G(v - h)) / (h * h);
    CHECK(d.G1 == doctest::Approx(g1_fd).epsilon(1e-8));
    CHECK(d.G2 == doctest::Approx(g2_fd).epsilon(2e-4));
  }
}

TEST_CASE("kernel blows up like an inverse square root at the rim") {
  // sqrt(beta0 - v) G'(v) tends to sqrt(beta0 / (-2 f'(1)));
  // for the cubic this limit is sqrt(beta0 / 4).
  const GKernel gk(Nonlinearity::cubic());
  const double b0 = gk.beta0();
  const double limit = std::sqrt(b0 / 4.0);
  const double near = b0 * (1.0 - 1e-10);
  const double scaled = std::sqrt(b0 - near) * gk.eval_G_derivs(near).G1;
  CHECK(scaled == doctest::Approx(limit).epsilon(1e-4));
}

TEST_CASE("curvature pair h, H agree with the derivative forms") {
  const GKernel gk(Nonlinearity::cubic());
  for (double v : {0.05, 0.2, 0.45, 0.6}) {
    const GDerivs d = gk.eval_G_derivs(v);
    const CurvaturePair c = gk.eval_h_H(v);
    CHECK(c.h == doctest::Approx(1.0 - d.G2 * v / d.G1).epsilon(1e-11));
    CHECK(c.H == doctest::Approx(v * v - d.G * v / d.G1).epsilon(1e-11));
  }
}

TEST_CASE("domain guard") {
  const GKernel gk(Nonlinearity::cubic());
  CHECK_THROWS_AS(gk.eval_G(gk.beta0() * 1.01), DomainError);
}

TEST_CASE("phase integral pinned values for the cubic") {
  const GKernel gk(Nonlinearity::cubic());
  const PhaseIntegrator pi(gk);
  const double b0 = gk.beta0();
  // Reference values from the tanh-sinh integrator (cross-checked below).
  CHECK(pi.theta_integral(0.3 * b0, 4.0) ==
        doctest::Approx(4.0799564385343352).epsilon(5e-12));
  CHECK(pi.theta_integral(0.9999 * b0, 4.0) ==
        doctest::Approx(12.681468030180799).epsilon(5e-11));
  CHECK(pi.theta_integral(0.999999 * b0, 4.0) ==
        doctest::Approx(17.565556869622839).epsilon(5e-10));
}

TEST_CASE("phase integral agrees with tanh-sinh per pi-cell") {
  const GKernel gk(Nonlinearity::cubic());
  const PhaseIntegrator pi(gk);
  const double b0 = gk.beta0();
  for (double frac : {0.2, 0.7, 0.99}) {
    const double beta = frac * b0;
    for (double phi : {1.0, 3.0, 6.5}) {
      const double adaptive = pi.theta_integral(beta, phi);
      const double reference = oracle_phase_integral(gk, beta, phi, 0);
      CHECK(adaptive == doctest::Approx(reference).epsilon(1e-9));
      const double curv = pi.curvature_integral(beta, phi);
      const double curv_ref = oracle_phase_integral(gk, beta, phi, 1);
      CHECK(curv == doctest::Approx(curv_ref).epsilon(2e-8));
    }
  }
}

TEST_CASE("phase integral is additive over subintervals") {
  const GKernel gk(Nonlinearity::sine());
  const PhaseIntegrator pi(gk);
  const double beta = 0.8 * gk.beta0();
  const double whole = pi.theta_integral(beta, 5.0);
  const double split = pi.theta_integral(beta, 2.0) +
                       pi.theta_integral_between(beta, 2.0, 5.0);
  CHECK(whole == doctest::Approx(split).epsilon(1e-11));
}

TEST_CASE("small-beta limit reduces to the linear problem") {
  // As beta -> 0 the kernel derivative is 1/sqrt(f'(0)), so the phase
  // integral over [0, phi] tends to phi / sqrt(f'(0)).
  const GKernel gk(Nonlinearity::sine());
  const PhaseIntegrator pi(gk);
  const double phi = 2.5;
  CHECK(pi.theta_integral(1e-8, phi) ==
        doctest::Approx(phi / std::sqrt(M_PI)).epsilon(1e-10));
}

TEST_CASE("solve_Theta inverts the phase integral") {
  const GKernel gk(Nonlinearity::cubic());
  const PhaseIntegrator pi(gk);
  const double b0 = gk.beta0();
  for (double frac : {0.3, 0.9, 0.9999}) {
    const double beta = frac * b0;
    for (double phi : {0.5, 2.0, 4.71, 7.0}) {
      const double y = pi.theta_integral(beta, phi);
      CHECK(pi.solve_Theta(y, beta) == doctest::Approx(phi).epsilon(1e-9));
    }
  }
}

TEST_CASE("hinted solve_Theta matches the cold solve") {
  const GKernel gk(Nonlinearity::cubic());
  const PhaseIntegrator pi(gk);
  const double beta = 0.85 * gk.beta0();
  const double y0 = pi.theta_integral(beta, 3.0);
  const double t0 = pi.solve_Theta(y0, beta);
  for (double y : {y0 * 0.6, y0 * 0.999, y0 * 1.001, y0 * 1.7}) {
    const double cold = pi.solve_Theta(y, beta);
    const double hinted = pi.solve_Theta(y, beta, y0, t0);
    CHECK(hinted == doctest::Approx(cold).epsilon(1e-8));
  }
}

TEST_CASE("solve_Theta at zero") {
  const GKernel gk(Nonlinearity::cubic());
  const PhaseIntegrator pi(gk);
  CHECK(pi.solve_Theta(0.0, 0.3) == doctest::Approx(0.0).epsilon(1e-12));
}

}  // TEST_SUITE
