#pragma once

#include <functional>

#include "bifurcata/nonlinearity.hpp"

namespace bifurcata {

struct QuadTols {
  double rel = 1e-11;        // relative target for a full integral
  double abs = 1e-14;        // absolute floor
  int max_depth = 48;        // panel bisection depth limit
  double theta_ftol = 1e-12; // residual target for solve_Theta (scaled by max(1, y))
};

// Integrals of the kernel derivatives along the phase variable:
//   theta_integral(beta, phi)     = int_0^phi G'(beta cos tau) dtau
//   curvature_integral(beta, phi) = int_0^phi G''(beta cos tau) cos(tau) dtau
// The integrands peak sharply near tau = m pi when |beta| approaches beta0
// (G' blows up like an inverse square root at the edge of its domain), so
// integration splits at multiples of pi and panels touching a multiple use
// the substitution tau = m pi +/- s^2, which flattens the peak.
class PhaseIntegrator {
 public:
  explicit PhaseIntegrator(const GKernel& gk, QuadTols tols = {});

  const GKernel& kernel() const { return gk_; }
  const QuadTols& tols() const { return tols_; }

  double theta_integral(double beta, double phi) const;
  double theta_integral_between(double beta, double phi_lo, double phi_hi) const;
  double curvature_integral(double beta, double phi) const;

  // Inverse of Theta -> theta_integral(beta, Theta): the unique Theta >= 0
  // with int_0^Theta G'(beta cos tau) dtau = y.  The hinted overload resumes
  // from a previously solved pair (y_hint, theta_hint); y may be on either
  // side of the hint.
  double solve_Theta(double y, double beta) const;
  double solve_Theta(double y, double beta, double y_hint,
                     double theta_hint) const;

 private:
  double integrate(const std::function<double(double)>& f, double lo,
                   double hi) const;

  GKernel gk_;
  QuadTols tols_;
};

}  // namespace bifurcata
