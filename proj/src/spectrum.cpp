#include "bifurcata/spectrum.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bifurcata/errors.hpp"
#include "bifurcata/roots.hpp"

namespace bifurcata {

namespace {

// lambda f'(u) sampled on a uniform grid over one half, at distances
// t_j = j/(n_pts-1) from the outer boundary, via a warm-started inversion of
// the phase map along the sweep.
std::vector<double> side_potential(const ShootingContext& sc, double lambda,
                                   double beta, int n_pts) {
  const double sq = std::sqrt(lambda);
  const GKernel& gk = sc.kernel();
  const Nonlinearity& nl = gk.nonlinearity();
  std::vector<double> q(static_cast<size_t>(n_pts));
  double y_prev = 0.0;
  double th_prev = 0.0;
  for (int j = 0; j < n_pts; ++j) {
    const double t = static_cast<double>(j) / (n_pts - 1);
    const double y = sq * t;
    const double th =
        (j == 0) ? 0.0 : sc.integrator().solve_Theta(y, beta, y_prev, th_prev);
    y_prev = y;
    th_prev = th;
    const double u = gk.eval_G(beta * std::cos(th));
    q[static_cast<size_t>(j)] = lambda * nl.df(u);
  }
  return q;
}

struct Tridiag {
  std::vector<double> d;  // diagonal, 2n+2 entries
  std::vector<double> e;  // symmetrized off-diagonal, 2n+1 entries
};

// Node order: left side x = -1..0 (indices 0..n), right side x = 0..1
// (indices n+1..2n+1).  Outer Neumann ghosts give the 2/dx^2 off-diagonal at
// the four outer-adjacent pairs; the interface ghosts give the 1/(a dx)
// coupling between the two interface nodes plus a matching diagonal shift.
Tridiag build_tridiag(const ShootingContext& sc, double lambda, double beta1,
                      double beta2, int n) {
  const double a = sc.coupling();
  const double dx = 1.0 / n;
  const double c = 1.0 / (dx * dx);
  const double g = 1.0 / (a * dx);
  const int N = 2 * n + 2;
  const std::vector<double> qL = side_potential(sc, lambda, beta1, n + 1);
  const std::vector<double> qR = side_potential(sc, lambda, beta2, n + 1);

  Tridiag T;
  T.d.assign(static_cast<size_t>(N), -2.0 * c);
  for (int i = 0; i <= n; ++i) {
    T.d[static_cast<size_t>(i)] += qL[static_cast<size_t>(i)];
    // right node j sits at x = j dx, i.e. distance 1 - j dx from the outer end
    T.d[static_cast<size_t>(n + 1 + i)] += qR[static_cast<size_t>(n - i)];
  }
  T.d[static_cast<size_t>(n)] -= g;
  T.d[static_cast<size_t>(n + 1)] -= g;

  T.e.assign(static_cast<size_t>(N - 1), c);
  const double rc = std::numbers::sqrt2 * c;  // sqrt(2c * c)
  T.e[0] = rc;
  T.e[static_cast<size_t>(n - 1)] = rc;
  T.e[static_cast<size_t>(n)] = g;
  T.e[static_cast<size_t>(n + 1)] = rc;
  T.e[static_cast<size_t>(N - 2)] = rc;
  return T;
}

// Top m eigenvalues of the symmetric tridiagonal, descending.
std::vector<double> top_eigenvalues(const Tridiag& T, int m) {
  const lapack_int N = static_cast<lapack_int>(T.d.size());
  std::vector<double> w(static_cast<size_t>(N));
  std::vector<lapack_int> iblock(static_cast<size_t>(N));
  std::vector<lapack_int> isplit(static_cast<size_t>(N));
  lapack_int found = 0;
  lapack_int nsplit = 0;
  const lapack_int info = LAPACKE_dstebz(
      'I', 'E', N, 0.0, 0.0, N - m + 1, N, 0.0, T.d.data(), T.e.data(), &found,
      &nsplit, w.data(), iblock.data(), isplit.data());
  if (info != 0 || found != m) {
    std::ostringstream os;
    os << "tridiagonal eigenvalue solve failed (info=" << info
       << ", found=" << found << " of " << m << ")";
    throw DiscretizationFailure(os.str());
  }
  std::vector<double> out(w.begin(), w.begin() + m);
  std::reverse(out.begin(), out.end());
  return out;
}

// Fixed-step classical fourth-order integration of psi'' = (mu - q) psi over
// one half, from the outer boundary (psi = 1, psi' = 0) to the interface.
// q_half holds the potential on the half-step grid (2 n_steps + 1 values).
// If samples is non-null, psi at the full-step nodes is appended to it.
void shoot_side(const std::vector<double>& q_half, double mu, int n_steps,
                double* psi_end, double* dpsi_end,
                std::vector<double>* samples) {
  const double h = 1.0 / n_steps;
  double p = 1.0;
  double v = 0.0;
  if (samples) samples->push_back(p);
  for (int i = 0; i < n_steps; ++i) {
    const double q0 = q_half[static_cast<size_t>(2 * i)];
    const double qm = q_half[static_cast<size_t>(2 * i + 1)];
    const double q1 = q_half[static_cast<size_t>(2 * i + 2)];
    const double k1p = v;
    const double k1v = (mu - q0) * p;
    const double k2p = v + 0.5 * h * k1v;
    const double k2v = (mu - qm) * (p + 0.5 * h * k1p);
    const double k3p = v + 0.5 * h * k2v;
    const double k3v = (mu - qm) * (p + 0.5 * h * k2p);
    const double k4p = v + h * k3v;
    const double k4v = (mu - q1) * (p + h * k3p);
    p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (samples) samples->push_back(p);
  }
  *psi_end = p;
  *dpsi_end = v;
}

int sign_changes(const std::vector<double>& xs) {
  int count = 0;
  double prev = 0.0;
  for (const double x : xs) {
    if (x == 0.0) continue;
    if (prev != 0.0 && prev * x < 0.0) ++count;
    prev = x;
  }
  return count;
}

}  // namespace

SpectrumResult compute_spectrum(const ShootingContext& sc, double lambda,
                                double beta1, double beta2, int n, int m) {
  if (n < 16) throw DomainError("compute_spectrum: grid too coarse");
  if (m < 1) throw DomainError("compute_spectrum: need at least one eigenvalue");
  if (!(lambda >= 0.0)) throw DomainError("compute_spectrum: lambda must be nonnegative");
  if (lambda == 0.0 && (beta1 != 0.0 || beta2 != 0.0))
    throw DomainError("compute_spectrum: nonzero amplitude needs lambda > 0");

  const Tridiag T1 = build_tridiag(sc, lambda, beta1, beta2, n);
  const Tridiag T2 = build_tridiag(sc, lambda, beta1, beta2, 2 * n);
  const int cap = 2 * n + 2;  // order of the smaller matrix
  m = std::min(m, cap);

  SpectrumResult res;
  res.n = n;
  double scale = 1.0;
  const auto tol_for = [&](size_t i) {
    return std::max(50.0 * res.errors[i], 1e-10 * scale);
  };
  for (;;) {
    const std::vector<double> w1 = top_eigenvalues(T1, m);
    const std::vector<double> w2 = top_eigenvalues(T2, m);
    res.eigenvalues.assign(static_cast<size_t>(m), 0.0);
    res.errors.assign(static_cast<size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
      const size_t si = static_cast<size_t>(i);
      res.eigenvalues[si] = (4.0 * w2[si] - w1[si]) / 3.0;
      res.errors[si] = std::abs(w1[si] - w2[si]) / 3.0;
    }
    scale = std::max(1.0, std::abs(res.eigenvalues[0]));
    const size_t last = static_cast<size_t>(m - 1);
    if (res.eigenvalues[last] < -tol_for(last) || m == cap) break;
    m = std::min(2 * m, cap);  // window missed part of the positive spectrum
  }

  // Each eigenvalue is judged against its own discretization error, so the
  // degeneracy band tracks the accuracy of the eigenvalue actually near zero
  // instead of the (much larger) error of the deepest one in the window.
  res.morse_index = 0;
  res.degenerate = false;
  double nearest = std::numeric_limits<double>::infinity();
  res.zero_tolerance = 1e-10 * scale;
  for (size_t i = 0; i < res.eigenvalues.size(); ++i) {
    const double mu = res.eigenvalues[i];
    const double tol = tol_for(i);
    if (mu > tol) ++res.morse_index;
    if (std::abs(mu) <= tol) res.degenerate = true;
    if (std::abs(mu) < nearest) {
      nearest = std::abs(mu);
      res.zero_tolerance = tol;
    }
  }
  return res;
}

std::vector<double> trivial_eigenvalues(const ShootingContext& sc,
                                        double lambda, int m) {
  if (m < 1) throw DomainError("trivial_eigenvalues: need at least one");
  const double a = sc.coupling();
  const double base = lambda * sc.kernel().nonlinearity().f_prime_0();
  const double pi = std::numbers::pi;
  std::vector<double> out;
  out.reserve(static_cast<size_t>(m));
  // kappa values interleave: 0 < z_1 < pi/2 < pi < z_2 < 3 pi/2 < 2 pi < ...
  for (int k = 1; out.size() < static_cast<size_t>(m); ++k) {
    const double kap_even = (k - 1) * pi;
    out.push_back(base - kap_even * kap_even);
    if (out.size() == static_cast<size_t>(m)) break;
    const auto fz = [a](double z) {
      return a * z * std::sin(z) - std::cos(z);
    };
    const double z =
        bisect(fz, (k - 1) * pi, (k - 0.5) * pi, 1e-14, 200).x;
    out.push_back(base - z * z);
  }
  return out;
}

std::vector<EigenCheck> eigen_cross_check(const ShootingContext& sc,
                                          double lambda, double beta1,
                                          double beta2,
                                          const SpectrumResult& fd,
                                          int m_check, int n_steps) {
  if (n_steps < 16) throw DomainError("eigen_cross_check: too few steps");
  m_check = std::min<int>(m_check, static_cast<int>(fd.eigenvalues.size()));
  const double a = sc.coupling();
  const std::vector<double> qL =
      side_potential(sc, lambda, beta1, 2 * n_steps + 1);
  const std::vector<double> qR =
      side_potential(sc, lambda, beta2, 2 * n_steps + 1);

  // psi2 is integrated in t = 1 - x, so its x-derivative at the interface is
  // the negative of the returned t-derivative.
  const auto det = [&](double mu) {
    double p1 = 0.0, v1 = 0.0, p2 = 0.0, w2 = 0.0;
    shoot_side(qL, mu, n_steps, &p1, &v1, nullptr);
    shoot_side(qR, mu, n_steps, &p2, &w2, nullptr);
    const double p2x = -w2;
    return -v1 * p2 + p2x * (p1 + 2.0 * a * v1);
  };

  std::vector<EigenCheck> out;
  out.reserve(static_cast<size_t>(m_check));
  for (int r = 0; r < m_check; ++r) {
    const double mu0 = fd.eigenvalues[static_cast<size_t>(r)];
    const double err = fd.errors[static_cast<size_t>(r)];
    const double scale = std::max(1.0, std::abs(mu0));
    double w = std::max(10.0 * err, 1e-7 * scale);
    double lo = mu0 - w;
    double hi = mu0 + w;
    double flo = det(lo);
    double fhi = det(hi);
    int widen = 0;
    while (flo * fhi > 0.0 && widen < 3) {
      w *= 10.0;
      lo = mu0 - w;
      hi = mu0 + w;
      flo = det(lo);
      fhi = det(hi);
      ++widen;
    }
    if (flo * fhi > 0.0) {
      std::ostringstream os;
      os << "matching determinant has no sign change near eigenvalue " << r
         << " (mu ~ " << mu0 << ")";
      throw NoSignChange(os.str());
    }
    const double mu_sh = bisect(det, lo, hi, 1e-13 * scale, 200).x;

    std::vector<double> sL, sR;
    sL.reserve(static_cast<size_t>(n_steps) + 1);
    sR.reserve(static_cast<size_t>(n_steps) + 1);
    double p1 = 0.0, v1 = 0.0, p2 = 0.0, w2 = 0.0;
    shoot_side(qL, mu_sh, n_steps, &p1, &v1, &sL);
    shoot_side(qR, mu_sh, n_steps, &p2, &w2, &sR);
    // amplitude of the right piece making the two halves one eigenfunction
    const double B =
        (std::abs(w2) >= std::abs(p2)) ? -v1 / w2 : (p1 + 2.0 * a * v1) / p2;
    int zeros = sign_changes(sL) + sign_changes(sR);
    if (p1 * (B * p2) < 0.0) ++zeros;  // the linear interface segment crosses

    EigenCheck ec;
    ec.mu_fd = mu0;
    ec.mu_shoot = mu_sh;
    ec.zeros = zeros;
    ec.end_product = B;  // psi(-1) = 1, psi(1) = B
    if (zeros != r) {
      std::ostringstream os;
      os << "eigenfunction of rank " << r << " has " << zeros
         << " sign changes";
      throw RankMismatch(os.str());
    }
    const bool ends_same = ec.end_product > 0.0;
    if (ends_same != (r % 2 == 0)) {
      std::ostringstream os;
      os << "end values of rank-" << r << " eigenfunction have the wrong "
         << "relative sign";
      throw RankMismatch(os.str());
    }
    out.push_back(ec);
  }
  return out;
}

}  // namespace bifurcata
