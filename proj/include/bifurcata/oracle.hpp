#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "bifurcata/nonlinearity.hpp"

namespace bifurcata {

// Reference implementations that deliberately avoid the production numerics:
// direct time integration of the differential equation instead of the phase
// representation, tanh-sinh quadrature instead of the adaptive panels, and
// plain bisection instead of polished root solves.  Tests and the verify
// command compare the two paths; nothing here calls solve_Theta or the
// phase integrals.

enum class Side { left, right };

struct IvpResult {
  double u_end = 0.0;   // u as x -> 0 from the integrated side
  double ux_end = 0.0;  // du/dx as x -> 0 from the integrated side
  double energy_drift = 0.0;  // max |E - E(0)| / max(1, |E(0)|)
  std::vector<double> xs, us, uxs;
};

// Classical fixed-step fourth-order integration of u'' + lambda f(u) = 0 on
// the half interval, started at the outer boundary with u = alpha, u' = 0.
// side::left runs over [-1, 0], side::right over [0, 1] (integrated inward
// from x = 1).  The energy u'^2 + lambda F(u) is conserved exactly by the
// equation; drift beyond drift_tol raises EnergyDrift.
IvpResult integrate_ivp(const Nonlinearity& nl, double lambda, double alpha,
                        Side side, int n_steps = 4000,
                        double drift_tol = 1e-10);

// Interface mismatch of the candidate pair (beta1, beta2) at lambda:
// first component u(-0) + a u_x(-0) - (u(+0) - a u_x(+0)), second component
// u_x(-0) - u_x(+0), both from direct integration with alpha_i = G(beta_i).
std::pair<double, double> matching_residual(const Nonlinearity& nl, double a,
                                            double lambda, double beta1,
                                            double beta2, int n_steps = 4000);

struct SolutionScan {
  std::vector<double> beta;               // grid nodes, strictly increasing
  std::vector<std::pair<int, int>> cells; // (i, j): sign change of both
                                          // residual components within the
                                          // cell [beta_i, beta_i+1] x
                                          // [beta_j, beta_j+1]
};

// Corner-sampled sweep of the matching residual over (beta1, beta2) in
// (-beta0, beta0)^2 with n cells per side.  One integration per node serves
// both sides (the right half is the left half mirrored).
SolutionScan scan_solution_set(const Nonlinearity& nl, double a,
                               double lambda, int n, int n_steps = 4000);

// Pure bisection to absolute bracket width 1e-14; the reference root solver.
double root_oracle(const std::function<double(double)>& fn, double lo,
                   double hi);

// Tanh-sinh (double-exponential) quadrature on [a, b].  Handles integrable
// endpoint blow-ups; f receives points strictly inside (a, b).
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-13, int max_level = 12);

// Phase integrals evaluated with tanh-sinh per pi-cell: the independent
// cross-check for PhaseIntegrator.  which = 0 integrates G'(beta cos tau),
// which = 1 integrates G''(beta cos tau) cos tau.
double oracle_phase_integral(const GKernel& gk, double beta, double phi,
                             int which, double rel_tol = 1e-13);

// Sign changes over consecutive entries, ignoring exact zeros.
int count_sign_changes(const std::vector<double>& values);

}  // namespace bifurcata
