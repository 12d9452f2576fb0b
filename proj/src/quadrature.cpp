#include "bifurcata/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "bifurcata/errors.hpp"
#include "bifurcata/roots.hpp"

namespace bifurcata {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss 7 / Kronrod 15 pair (positive abscissae; rule is symmetric).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767,
                           0.3818300505051189, 0.4179591836734694};

struct Panel {
  double a, b;
  double kronrod;
  double err;     // |kronrod - gauss|
  double resabs;  // estimate of the integral of |f|
};

template <class F>
Panel gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = kWgk[7] * fc;
  double g = kWg[3] * fc;
  double ra = kWgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    k += kWgk[j] * (f1 + f2);
    ra += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) g += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, k * h, std::abs((k - g) * h), ra * h};
}

// Error accounting for one adaptive sweep.  "clean" error is bounded by the
// requested tolerance through nested halving; "noise" error comes from panels
// whose estimates sit at the floor set by rounding in the integrand itself
// (refining them further only chases that noise); "fail" error belongs to
// panels abandoned at the depth cap or node budget.
struct AdaptStats {
  double clean = 0.0;
  double noise = 0.0;
  double fail = 0.0;
  long nodes = 0;
  long budget = 100000;
};

constexpr double kEps = 2.220446049250313e-16;

template <class F>
double adapt(F&& f, const Panel& p, double eps, int depth, int max_depth,
             AdaptStats& st) {
  ++st.nodes;
  if (p.err <= eps) {
    st.clean += p.err;
    return p.kronrod;
  }
  if (p.err <= 50.0 * kEps * p.resabs ||
      p.b - p.a < 1e-15 * (1.0 + std::abs(p.a))) {
    st.noise += p.err;
    return p.kronrod;
  }
  if (depth >= max_depth || st.nodes > st.budget) {
    st.fail += p.err;
    return p.kronrod;
  }
  const double m = 0.5 * (p.a + p.b);
  const Panel p1 = gk15(f, p.a, m);
  const Panel p2 = gk15(f, m, p.b);
  // A split that fails to shrink the error estimate of an already
  // well-resolved panel signals that the estimate measures evaluation noise,
  // not discretization error.  Accept instead of chasing the noise: both the
  // demanded tolerance and the noise level scale the same way with panel
  // width, so refinement would never catch up.
  if (depth >= 4 && p.err <= 1e-7 * p.resabs &&
      p1.err + p2.err >= 0.5 * p.err) {
    st.noise += p1.err + p2.err;
    return p1.kronrod + p2.kronrod;
  }
  return adapt(f, p1, 0.5 * eps, depth + 1, max_depth, st) +
         adapt(f, p2, 0.5 * eps, depth + 1, max_depth, st);
}

template <class F>
double adapt_root(F&& f, double a, double b, double eps, int max_depth,
                  AdaptStats& st) {
  return adapt(f, gk15(f, a, b), eps, 0, max_depth, st);
}

}  // namespace

PhaseIntegrator::PhaseIntegrator(const GKernel& gk, QuadTols tols)
    : gk_(gk), tols_(tols) {}

// Adaptive integration of f over [lo, hi] with the substitution applied on
// the halves of every pi-cell piece that touch a multiple of pi.
double PhaseIntegrator::integrate(const std::function<double(double)>& f,
                                  double lo, double hi) const {
  if (!(hi > lo)) return 0.0;

  // pieces of [lo, hi] cut at multiples of pi, each split at its midpoint
  enum class Sub { none, pivot_left, pivot_right };
  struct Piece {
    double a, b;
    double pivot;
    Sub sub;
  };
  std::vector<Piece> pieces;
  double a = lo;
  const long m_first = static_cast<long>(std::floor(lo / kPi));
  for (long m = m_first;; ++m) {
    const double cell_lo = static_cast<double>(m) * kPi;
    const double cell_hi = cell_lo + kPi;
    const double b = std::min(hi, cell_hi);
    if (b > a) {
      const double mid = 0.5 * (a + b);
      const bool touch_left = a - cell_lo <= 1e-13 * (1.0 + std::abs(a));
      const bool touch_right = cell_hi - b <= 1e-13 * (1.0 + std::abs(b));
      pieces.push_back({a, mid, cell_lo,
                        touch_left ? Sub::pivot_left : Sub::none});
      pieces.push_back({mid, b, cell_hi,
                        touch_right ? Sub::pivot_right : Sub::none});
    }
    if (hi <= cell_hi) break;
    a = cell_hi;
  }

  auto piece_value = [&](const Piece& pc, double eps, AdaptStats& st) {
    if (pc.sub == Sub::none)
      return adapt_root(f, pc.a, pc.b, eps, tols_.max_depth, st);
    // tau = pivot +/- s^2, with s increasing away from the pivot
    const bool left = pc.sub == Sub::pivot_left;
    const double sgn = left ? 1.0 : -1.0;
    const double s_lo = std::sqrt(std::max(0.0, left ? pc.a - pc.pivot
                                                     : pc.pivot - pc.b));
    const double s_hi = std::sqrt(std::max(0.0, left ? pc.b - pc.pivot
                                                     : pc.pivot - pc.a));
    auto subst = [&](double s) { return 2.0 * s * f(pc.pivot + sgn * s * s); };
    return adapt_root(subst, s_lo, s_hi, eps, tols_.max_depth, st);
  };

  // first pass fixes the magnitude scale, second pass meets the tolerance
  double eps_total = 0.0;
  AdaptStats st;
  double total = 0.0;
  {
    AdaptStats coarse_st;
    double coarse = 0.0;
    for (const auto& pc : pieces) coarse += piece_value(pc, 1e-6, coarse_st);
    total = coarse;
    st = coarse_st;
    eps_total = 1e-6 * static_cast<double>(pieces.size());
  }
  for (int pass = 0; pass < 2; ++pass) {
    eps_total = std::max(tols_.abs, tols_.rel * std::abs(total));
    const double eps_piece = eps_total / static_cast<double>(pieces.size());
    AdaptStats pass_st;
    double sum = 0.0;
    for (const auto& pc : pieces) sum += piece_value(pc, eps_piece, pass_st);
    const bool scale_stable = std::abs(sum) <= 2.0 * std::abs(total) + tols_.abs;
    total = sum;
    st = pass_st;
    if (scale_stable) break;
  }
  // Noise-floor panels already carry the best answer the integrand's own
  // rounding allows, so only abandoned panels count against convergence.
  if (st.fail > std::max(eps_total, 1e3 * kEps * std::abs(total)))
    throw ToleranceNotMet("phase integral did not converge to tolerance");
  return total;
}

double PhaseIntegrator::theta_integral(double beta, double phi) const {
  return theta_integral_between(beta, 0.0, phi);
}

double PhaseIntegrator::theta_integral_between(double beta, double phi_lo,
                                               double phi_hi) const {
  if (!(std::abs(beta) < gk_.beta0()))
    throw DomainError("theta_integral: |beta| must be below beta0");
  if (phi_hi == phi_lo) return 0.0;
  if (phi_hi < phi_lo) return -theta_integral_between(beta, phi_hi, phi_lo);
  if (beta == 0.0)
    return (phi_hi - phi_lo) * gk_.eval_G_derivs(0.0).G1;
  auto f = [&](double tau) {
    return gk_.eval_G_derivs(beta * std::cos(tau)).G1;
  };
  return integrate(f, phi_lo, phi_hi);
}

double PhaseIntegrator::curvature_integral(double beta, double phi) const {
  if (!(std::abs(beta) < gk_.beta0()))
    throw DomainError("curvature_integral: |beta| must be below beta0");
  if (phi == 0.0) return 0.0;
  if (phi < 0.0) return -curvature_integral(beta, -phi);
  if (beta == 0.0) return 0.0;  // G'' is odd, so G''(0) = 0
  auto f = [&](double tau) {
    return gk_.eval_G_derivs(beta * std::cos(tau)).G2 * std::cos(tau);
  };
  return integrate(f, 0.0, phi);
}

double PhaseIntegrator::solve_Theta(double y, double beta) const {
  if (y < 0.0) throw DomainError("solve_Theta: y must be nonnegative");
  if (y == 0.0) return 0.0;
  const double g1_0 = gk_.eval_G_derivs(0.0).G1;
  auto fn = [&](double th) { return theta_integral(beta, th) - y; };
  auto [lo, hi] =
      expand_bracket_right(fn, 0.0, 1.25 * y / g1_0 + 0.5, 1e9);
  // the residual is computed through the adaptive integral, so it cannot be
  // certified below the integrator's own relative target
  const double ftol =
      std::max(tols_.theta_ftol * std::max(1.0, y), tols_.rel * y);
  auto dfn = [&](double th) {
    return gk_.eval_G_derivs(beta * std::cos(th)).G1;
  };
  return newton_safeguarded(fn, dfn, 0.5 * (lo + hi), lo, hi, ftol, 0.0).x;
}

double PhaseIntegrator::solve_Theta(double y, double beta, double y_hint,
                                    double theta_hint) const {
  if (y < 0.0) throw DomainError("solve_Theta: y must be nonnegative");
  if (y == 0.0) return 0.0;
  if (!(y_hint >= 0.0) || !(theta_hint >= 0.0)) return solve_Theta(y, beta);
  const double ftol =
      std::max(tols_.theta_ftol * std::max(1.0, y), tols_.rel * y);
  double theta = theta_hint;
  double acc = y_hint;  // theta_integral(beta, theta)
  for (int it = 0; it < 12; ++it) {
    const double resid = acc - y;
    if (std::abs(resid) <= ftol) return theta;
    const double slope = gk_.eval_G_derivs(beta * std::cos(theta)).G1;
    const double step = -resid / slope;
    const double theta_next = theta + step;
    if (!(theta_next >= 0.0) || std::abs(step) > kPi) break;  // hint too far
    acc += theta_integral_between(beta, theta, theta_next);
    theta = theta_next;
  }
  if (std::abs(acc - y) <= ftol) return theta;
  return solve_Theta(y, beta);
}

}  // namespace bifurcata
