#pragma once

#include <vector>

#include "bifurcata/shooting.hpp"

namespace bifurcata {

// Spectrum of the linearization psi'' + lambda f'(u) psi = mu psi around a
// solution described by (lambda, beta1, beta2), with Neumann outer ends and
// the interface conditions psi_x(-0) = psi_x(+0) and
// psi(+0) - psi(-0) = 2 a psi_x(0).
//
// Discretization: second differences on n intervals per side, nodes ordered
// left half then right half so the coupling only touches the two interface
// nodes and the matrix stays tridiagonal.  Ghost nodes at all four ends are
// eliminated with centered slopes, keeping the scheme second order; a
// diagonal similarity symmetrizes the two unequal off-diagonal pairs that
// elimination creates.  Eigenvalues are computed on grids n and 2n and
// Richardson-extrapolated, which also yields a per-eigenvalue error estimate
// and from it a tolerance for calling an eigenvalue "zero".

struct SpectrumResult {
  std::vector<double> eigenvalues;  // top of the spectrum, descending, extrapolated
  std::vector<double> errors;       // per-eigenvalue estimate |mu_n - mu_2n| / 3
  int morse_index = 0;              // count of eigenvalues above +zero_tolerance
  bool degenerate = false;          // some eigenvalue within zero_tolerance of 0
  double zero_tolerance = 0.0;   // tolerance applied to the eigenvalue nearest zero
  int n = 0;  // base grid (intervals per side); the refined grid is 2n
};

// Top `m` eigenvalues (the window widens automatically until the smallest
// returned eigenvalue is clearly negative, so morse_index counts the whole
// positive part).  Requires lambda > 0 unless beta1 = beta2 = 0.
SpectrumResult compute_spectrum(const ShootingContext& sc, double lambda,
                                double beta1, double beta2, int n = 2000,
                                int m = 8);

// Closed-form eigenvalues of the linearization around u == 0: the problem
// separates into symmetric modes, which need sin(kappa) = 0, and
// antisymmetric modes, which need a kappa tan(kappa) = 1; each gives
// mu = lambda f'(0) - kappa^2.  Returns the top m, descending.
std::vector<double> trivial_eigenvalues(const ShootingContext& sc,
                                        double lambda, int m);

// Independent verification of a finite-difference spectrum.  For each of the
// top m_check eigenvalues, the eigenvalue is re-located as a root of the
// matching determinant of two initial-value integrations of the linearized
// equation (classical fixed-step fourth order, nothing shared with the
// difference scheme), and the oscillation structure is checked: the
// eigenfunction of rank r must change sign exactly r times across the two
// halves plus the interface, and its values at the two outer ends must agree
// in sign exactly when r is even.  Throws NoSignChange when the determinant
// has no root near a discrete eigenvalue and RankMismatch when the shape
// tests fail.
struct EigenCheck {
  double mu_fd = 0.0;        // extrapolated finite-difference eigenvalue
  double mu_shoot = 0.0;     // matching-determinant root
  int zeros = 0;             // sign changes of the eigenfunction
  double end_product = 0.0;  // psi(-1) * psi(1)
};

std::vector<EigenCheck> eigen_cross_check(const ShootingContext& sc,
                                          double lambda, double beta1,
                                          double beta2,
                                          const SpectrumResult& fd,
                                          int m_check, int n_steps = 4000);

}  // namespace bifurcata
