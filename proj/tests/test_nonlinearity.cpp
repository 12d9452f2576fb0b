#include <doctest.h>

#include <cmath>

#include "bifurcata/errors.hpp"
#include "bifurcata/nonlinearity.hpp"

using namespace bifurcata;

TEST_SUITE("nonlinearity") {

TEST_CASE("cubic closed forms") {
  const Nonlinearity nl = Nonlinearity::cubic();
  CHECK(nl.name() == "cubic");
  CHECK(nl.f(0.5) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(nl.df(0.5) == doctest::Approx(1.0 - 3.0 * 0.25).epsilon(1e-15));
  CHECK(nl.d2f(0.5) == doctest::Approx(-3.0).epsilon(1e-15));
  // F(u) = u^2 - u^4/2
  CHECK(nl.F(0.5) == doctest::Approx(0.25 - 0.03125).epsilon(1e-15));
  CHECK(nl.F(1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(nl.beta0() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(nl.f_prime_0() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(nl.u_peak() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(nl.d3f_0() == doctest::Approx(-6.0).epsilon(1e-12));
}

TEST_CASE("sine closed forms") {
  const Nonlinearity nl = Nonlinearity::sine();
  CHECK(nl.name() == "sine");
  CHECK(nl.f(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(nl.df(0.0) == doctest::Approx(M_PI).epsilon(1e-15));
  // F(u) = 2 (1 - cos(pi u)) / pi, so F(1) = 4 / pi
  CHECK(nl.F(1.0) == doctest::Approx(4.0 / M_PI).epsilon(1e-15));
  CHECK(nl.beta0() ==
        doctest::Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-15));
  CHECK(nl.u_peak() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("oddness and even potential") {
  for (const Nonlinearity& nl :
       {Nonlinearity::cubic(), Nonlinearity::sine(),
        Nonlinearity::custom({1.0, -0.5, -0.5})}) {
    for (double u = -1.0; u <= 1.0; u += 0.125) {
      CHECK(nl.f(-u) == doctest::Approx(-nl.f(u)).epsilon(1e-15));
      CHECK(nl.df(-u) == doctest::Approx(nl.df(u)).epsilon(1e-15));
      CHECK(nl.F(-u) == doctest::Approx(nl.F(u)).epsilon(1e-15));
    }
  }
}

TEST_CASE("custom polynomial reproduces the cubic") {
  const Nonlinearity cu = Nonlinearity::cubic();
  const Nonlinearity po = Nonlinearity::custom({1.0, -1.0});
  for (double u = -1.0; u <= 1.0; u += 0.0625) {
    CHECK(po.f(u) == doctest::Approx(cu.f(u)).epsilon(1e-14));
    CHECK(po.df(u) == doctest::Approx(cu.df(u)).epsilon(1e-14));
    CHECK(po.F(u) == doctest::Approx(cu.F(u)).epsilon(1e-14));
  }
  CHECK(po.beta0() == doctest::Approx(cu.beta0()).epsilon(1e-14));
  CHECK(po.f_prime_0() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("custom shape validation rejects bad polynomials") {
  CHECK_THROWS_AS(Nonlinearity::custom({}), DomainError);
  CHECK_THROWS_AS(Nonlinearity::custom({-1.0}), DomainError);  // f'(0) < 0
  CHECK_THROWS_AS(Nonlinearity::custom({1.0}), DomainError);   // f(1) != 0
  // f(u) = u (1 - u^2)^2 has f(1) = 0 but f'(1) = 0, not negative
  CHECK_THROWS_AS(Nonlinearity::custom({1.0, -2.0, 1.0}), DomainError);
  // interior zero: f(u) = u - 2.5 u^3 + 1.5 u^5 vanishes inside (0, 1)
  CHECK_THROWS_AS(Nonlinearity::custom({1.0, -2.5, 1.5}), DomainError);
}

TEST_CASE("factory by name") {
  CHECK(make_nonlinearity("cubic").name() == "cubic");
  CHECK(make_nonlinearity("sine").name() == "sine");
  CHECK(make_nonlinearity("custom", {1.0, -1.0}).kind() ==
        NonlinearityKind::custom);
  CHECK_THROWS_AS(make_nonlinearity("bogus"), DomainError);
}

TEST_CASE("condition report is strong for the built-ins") {
  for (const Nonlinearity& nl : {Nonlinearity::cubic(), Nonlinearity::sine()}) {
    const ConditionReport r = check_conditions(nl, 400);
    CHECK(r.shape_ok);
    CHECK(r.single_peak);
    CHECK(r.h_decreasing);
    CHECK(r.tail_nonincreasing);
    CHECK(r.slope_ratio_below_one);
    CHECK(r.strong());
    CHECK(r.margin_h > 0.0);
    CHECK(r.margin_slope_ratio > 0.0);
    CHECK(r.n_samples == 400);
  }
}

}  // TEST_SUITE
