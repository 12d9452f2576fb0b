#include "bifurcata/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bifurcata/errors.hpp"
#include "bifurcata/roots.hpp"

namespace bifurcata {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

ShootingContext::ShootingContext(const Nonlinearity& nl, double a,
                                 QuadTols tols)
    : gk_(nl), integ_(gk_, tols), a_(a) {
  if (!(a > 0.0)) throw DomainError("ShootingContext: coupling a must be positive");
}

ShootingContext::GEval ShootingContext::eval_g_full(double beta,
                                                    double phi) const {
  const double T = integ_.theta_integral(beta, phi);
  const double w = beta * std::cos(phi);
  const double g1w = gk_.eval_G_derivs(w).G1;
  double g;
  if (std::abs(beta) < 1e-6 * gk_.beta0()) {
    // t-averaged form cos(phi) int_0^1 G'(t w) dt - a sin(phi) T; with
    // |w| <= |beta| far below the kernel's Taylor switch the integrand is a
    // quadratic polynomial of its argument, so Simpson evaluates it exactly
    const double avg = (gk_.eval_G_derivs(0.0).G1 +
                        4.0 * gk_.eval_G_derivs(0.5 * w).G1 + g1w) / 6.0;
    g = std::cos(phi) * avg - a_ * std::sin(phi) * T;
  } else {
    g = gk_.eval_G(w) / beta - a_ * std::sin(phi) * T;
  }
  const double g_dphi =
      -(1.0 + a_) * g1w * std::sin(phi) - a_ * std::cos(phi) * T;
  return {g, g_dphi, T};
}

double ShootingContext::eval_g(double beta, double phi) const {
  return eval_g_full(beta, phi).g;
}

double ShootingContext::eval_g_dphi(double beta, double phi) const {
  return eval_g_full(beta, phi).g_dphi;
}

double ShootingContext::solve_phi_k(int k, double beta) const {
  if (k < 1) throw DomainError("solve_phi_k: k must be >= 1");
  const double lo = (k - 1) * kPi;
  const double hi = (k - 0.5) * kPi;
  auto fn = [&](double phi) { return eval_g(beta, phi); };
  RootResult r = bisect(fn, lo, hi, 1e-13);
  return solve_phi_k(k, beta, r.x);
}

double ShootingContext::solve_phi_k(int k, double beta,
                                    double phi_hint) const {
  if (k < 1) throw DomainError("solve_phi_k: k must be >= 1");
  const double lo = (k - 1) * kPi;
  const double hi = (k - 0.5) * kPi;
  double phi = std::clamp(phi_hint, lo + 1e-15, hi - 1e-15);
  for (int it = 0; it < 10; ++it) {
    const GEval e = eval_g_full(beta, phi);
    if (std::abs(e.g) <= 1e-12) return phi;
    if (e.g_dphi == 0.0) break;
    double next = phi - e.g / e.g_dphi;
    if (!(next > lo) || !(next < hi)) break;  // hint not usable, restart cold
    if (std::abs(next - phi) < 1e-16 * std::max(1.0, phi)) {
      phi = next;
      const double gv = eval_g(beta, phi);
      if (std::abs(gv) <= 1e-12) return phi;
      break;
    }
    phi = next;
  }
  // cold restart: bisection bracket, then polish once more
  auto fn = [&](double p) { return eval_g(beta, p); };
  RootResult r = bisect(fn, lo, hi, 1e-13);
  phi = r.x;
  for (int it = 0; it < 6; ++it) {
    const GEval e = eval_g_full(beta, phi);
    if (std::abs(e.g) <= 1e-12) return phi;
    if (e.g_dphi == 0.0) break;
    const double next = phi - e.g / e.g_dphi;
    if (!(next > lo) || !(next < hi)) break;
    phi = next;
  }
  if (std::abs(eval_g(beta, phi)) > 1e-12)
    throw ToleranceNotMet("solve_phi_k: branch function residual above 1e-12");
  return phi;
}

double ShootingContext::lambda_branch(int k, Parity parity,
                                      double beta) const {
  if (parity == Parity::even) {
    const double T = integ_.theta_integral(beta, k * kPi);
    return T * T;
  }
  return lambda_branch(k, parity, beta, solve_phi_k(k, beta));
}

double ShootingContext::lambda_branch(int k, Parity parity, double beta,
                                      double phi_hint) const {
  if (k < 1) throw DomainError("lambda_branch: k must be >= 1");
  double phi;
  if (parity == Parity::even) {
    phi = k * kPi;
  } else {
    phi = solve_phi_k(k, beta, phi_hint);
  }
  const double T = integ_.theta_integral(beta, phi);
  return T * T;
}

double ShootingContext::lambda_to_beta(int k, Parity parity,
                                       double lambda) const {
  // The rim cap keeps every integral inside the region where the kernel
  // evaluates cleanly; amplitudes closer to the rim correspond to lambda far
  // past any plotted range.
  const double rim = gk_.beta0() * (1.0 - 1e-6);
  auto fn = [&](double beta) {
    return lambda_branch(k, parity, beta) - lambda;
  };
  const double f_lo = fn(1e-9 * gk_.beta0());
  if (f_lo >= 0.0)
    throw NoRootFound("lambda_to_beta: lambda at or below the branch origin");
  if (fn(rim) <= 0.0)
    throw NoRootFound("lambda_to_beta: lambda above the resolvable range");
  RootResult r = bisect(fn, 1e-9 * gk_.beta0(), rim, 1e-12);
  return r.x;
}

PQ ShootingContext::eval_PQ(double lambda, double beta) const {
  if (!(lambda > 0.0)) throw DomainError("eval_PQ: lambda must be positive");
  const double sq = std::sqrt(lambda);
  const double theta = integ_.solve_Theta(sq, beta);
  const double w = beta * std::cos(theta);
  const double P = gk_.eval_G(w) - a_ * sq * beta * std::sin(theta);
  const double Q = -beta * std::sin(theta);
  return {P, Q, theta};
}

PQBeta ShootingContext::eval_PQ_beta(double lambda, double beta) const {
  if (!(lambda > 0.0)) throw DomainError("eval_PQ_beta: lambda must be positive");
  const double sq = std::sqrt(lambda);
  const double theta = integ_.solve_Theta(sq, beta);
  const double C = integ_.curvature_integral(beta, theta);
  const double w = beta * std::cos(theta);
  const double g1 = gk_.eval_G_derivs(w).G1;
  const double sin_t = std::sin(theta), cos_t = std::cos(theta);
  const double Q_beta = -sin_t + beta * cos_t / g1 * C;
  const double P_beta = g1 * cos_t - a_ * sq * sin_t +
                        (beta * sin_t + a_ * sq * beta * cos_t / g1) * C;
  return {P_beta, Q_beta, theta};
}

PQLambda ShootingContext::eval_PQ_lambda(double lambda, double beta) const {
  if (!(lambda > 0.0)) throw DomainError("eval_PQ_lambda: lambda must be positive");
  const double sq = std::sqrt(lambda);
  const double theta = integ_.solve_Theta(sq, beta);
  const double w = beta * std::cos(theta);
  const double g1 = gk_.eval_G_derivs(w).G1;
  const double sin_t = std::sin(theta), cos_t = std::cos(theta);
  const double P_lambda =
      -(1.0 + a_) * beta * sin_t / (2.0 * sq) - a_ * beta * cos_t / (2.0 * g1);
  const double Q_lambda = -beta * cos_t / (2.0 * sq * g1);
  return {P_lambda, Q_lambda, theta};
}

double ShootingContext::eval_D(double lambda, double beta1,
                               double beta2) const {
  const PQBeta d1 = eval_PQ_beta(lambda, beta1);
  const PQBeta d2 = eval_PQ_beta(lambda, beta2);
  return d1.P_beta * d2.Q_beta + d1.Q_beta * d2.P_beta;
}

RIJ ShootingContext::eval_RIJ(double beta, double phi) const {
  const double sin_p = std::sin(phi), cos_p = std::cos(phi);
  const double w = beta * cos_p;
  const double g1 = gk_.eval_G_derivs(w).G1;
  const double C = integ_.curvature_integral(beta, phi);
  const double R = -sin_p + w / g1 * C;
  if (beta == 0.0) return {R, 0.0, 0.0};
  if (sin_p == 0.0)
    throw DomainError("eval_RIJ: sin(phi) must be nonzero for I and J");
  if (w == 0.0)
    throw DomainError("eval_RIJ: beta cos(phi) must be nonzero for I and J");
  const double T = integ_.theta_integral(beta, phi);
  const double Gw = gk_.eval_G(w);
  const double I =
      beta * ((g1 * beta * sin_p / Gw + cos_p / sin_p) * T + g1);
  const double J = (g1 * w / Gw - 1.0) * T - beta * C;
  return {R, I, J};
}

double ShootingContext::dphi_dbeta(double beta, double phi) const {
  if (beta == 0.0) return 0.0;
  const RIJ r = eval_RIJ(beta, phi);
  if (r.I == 0.0) throw DomainError("dphi_dbeta: degenerate denominator");
  return r.J / r.I;
}

}  // namespace bifurcata
