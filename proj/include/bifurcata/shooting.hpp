#pragma once

#include "bifurcata/nonlinearity.hpp"
#include "bifurcata/quadrature.hpp"

namespace bifurcata {

enum class Parity { odd, even };

struct PQ {
  double P, Q;
  double theta;  // phase at the interface: theta_integral(beta, theta) = sqrt(lambda)
};

struct PQBeta {
  double P_beta, Q_beta;
  double theta;
};

struct PQLambda {
  double P_lambda, Q_lambda;
  double theta;
};

struct RIJ {
  double R, I, J;
};

// Shooting reduction for the half-interval problem with coupling a > 0.
// A half solution launched from height G(beta) meets the interface with
//   P(lambda, beta) = G(beta cos theta) - a sqrt(lambda) beta sin(theta)
//   Q(lambda, beta) = -beta sin(theta)
// where theta solves theta_integral(beta, theta) = sqrt(lambda).  Matched
// pairs satisfy P(beta1) = P(beta2), Q(beta1) = -Q(beta2).  The branch
// function g(beta, phi) = G(beta cos phi)/beta - a sin(phi) theta_integral
// vanishes at phi_k(beta), the phase of the k-th symmetric branch.
class ShootingContext {
 public:
  ShootingContext(const Nonlinearity& nl, double a, QuadTols tols = {});

  const GKernel& kernel() const { return gk_; }
  const PhaseIntegrator& integrator() const { return integ_; }
  double coupling() const { return a_; }
  double beta0() const { return gk_.beta0(); }

  // branch function; the removable beta = 0 singularity is evaluated through
  // the t-averaged form cos(phi) int_0^1 G'(t beta cos phi) dt - a sin(phi) T
  double eval_g(double beta, double phi) const;
  double eval_g_dphi(double beta, double phi) const;

  // unique root of g(beta, .) in ((k-1) pi, (k-1/2) pi); the hinted overload
  // polishes from a nearby known root
  double solve_phi_k(int k, double beta) const;
  double solve_phi_k(int k, double beta, double phi_hint) const;

  // lambda along the k-th primary branch at parameter beta:
  // odd parity uses phi_k(beta), even parity uses the full phase k pi
  double lambda_branch(int k, Parity parity, double beta) const;
  double lambda_branch(int k, Parity parity, double beta, double phi_hint) const;

  // inverse of lambda_branch on beta in (0, beta0); bisection on the grid of
  // the monotone sweep
  double lambda_to_beta(int k, Parity parity, double lambda) const;

  PQ eval_PQ(double lambda, double beta) const;
  PQBeta eval_PQ_beta(double lambda, double beta) const;
  PQLambda eval_PQ_lambda(double lambda, double beta) const;

  // D = P_beta(beta1) Q_beta(beta2) + Q_beta(beta1) P_beta(beta2), the
  // transversality determinant of the matching system at a solution pair
  double eval_D(double lambda, double beta1, double beta2) const;

  // R(beta, phi) = -sin(phi) + (beta cos phi / G'(beta cos phi)) C(beta, phi)
  // equals Q_beta along the odd branch at phi = phi_k(beta).  I and J are the
  // numerator/denominator pair with dphi_k/dbeta = J / I; both need
  // beta cos(phi) != 0 and sin(phi) != 0 and are returned as 0 at beta = 0.
  RIJ eval_RIJ(double beta, double phi) const;
  double dphi_dbeta(double beta, double phi) const;

 private:
  struct GEval {
    double g, g_dphi, T;
  };
  GEval eval_g_full(double beta, double phi) const;

  GKernel gk_;
  PhaseIntegrator integ_;
  double a_;
};

}  // namespace bifurcata
