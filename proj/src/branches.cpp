#include "bifurcata/branches.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bifurcata/errors.hpp"
#include "bifurcata/roots.hpp"

namespace bifurcata {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------- small dense linear algebra (3x3) ----------

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

double dot3(const Vec3& x, const Vec3& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

double norm3(const Vec3& x) { return std::sqrt(dot3(x, x)); }

Vec3 scale3(const Vec3& x, double s) {
  return {x[0] * s, x[1] * s, x[2] * s};
}

Vec3 add3(const Vec3& x, const Vec3& y) {
  return {x[0] + y[0], x[1] + y[1], x[2] + y[2]};
}

Vec3 sub3(const Vec3& x, const Vec3& y) {
  return {x[0] - y[0], x[1] - y[1], x[2] - y[2]};
}

bool solve3(Mat3 A, Vec3 b, Vec3& out) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) < 1e-300) return false;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < 3; ++r) {
      const double m = A[r][col] / A[col][col];
      for (int c = col; c < 3; ++c) A[r][c] -= m * A[col][c];
      b[r] -= m * b[col];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < 3; ++c) s -= A[r][c] * out[c];
    out[r] = s / A[r][r];
  }
  return true;
}

// Cyclic Jacobi sweeps; A symmetric.  Columns of V are eigenvectors.
void eigen3_sym(Mat3 A, Mat3& V, Vec3& d) {
  V = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = std::abs(A[0][1]) + std::abs(A[0][2]) + std::abs(A[1][2]);
    if (off < 1e-300) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (A[p][q] == 0.0) continue;
        const double theta = 0.5 * (A[q][q] - A[p][p]) / A[p][q];
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int r = 0; r < 3; ++r) {
          const double arp = A[r][p], arq = A[r][q];
          A[r][p] = c * arp - s * arq;
          A[r][q] = s * arp + c * arq;
        }
        for (int r = 0; r < 3; ++r) {
          const double apr = A[p][r], aqr = A[q][r];
          A[p][r] = c * apr - s * aqr;
          A[q][r] = s * apr + c * aqr;
        }
        for (int r = 0; r < 3; ++r) {
          const double vrp = V[r][p], vrq = V[r][q];
          V[r][p] = c * vrp - s * vrq;
          V[r][q] = s * vrp + c * vrq;
        }
      }
    }
  }
  d = {A[0][0], A[1][1], A[2][2]};
}

// ---------- matching system in (lambda, beta1, beta2) ----------

Vec3 state(double lambda, double beta1, double beta2) {
  return {lambda, beta1, beta2};
}

struct Residual {
  double F1, F2;
  double norm() const { return std::max(std::abs(F1), std::abs(F2)); }
};

Residual matching_F(const ShootingContext& sc, const Vec3& X) {
  const PQ a = sc.eval_PQ(X[0], X[1]);
  const PQ b = sc.eval_PQ(X[0], X[2]);
  return {a.P - b.P, a.Q + b.Q};
}

void matching_J(const ShootingContext& sc, const Vec3& X, Vec3& row1,
                Vec3& row2) {
  const PQBeta b1 = sc.eval_PQ_beta(X[0], X[1]);
  const PQBeta b2 = sc.eval_PQ_beta(X[0], X[2]);
  const PQLambda l1 = sc.eval_PQ_lambda(X[0], X[1]);
  const PQLambda l2 = sc.eval_PQ_lambda(X[0], X[2]);
  row1 = {l1.P_lambda - l2.P_lambda, b1.P_beta, -b2.P_beta};
  row2 = {l1.Q_lambda + l2.Q_lambda, b1.Q_beta, b2.Q_beta};
}

bool in_domain(const ShootingContext& sc, const Vec3& X) {
  const double rim = sc.beta0() * (1.0 - 3e-6);
  return X[0] > 1e-8 && std::abs(X[1]) < rim && std::abs(X[2]) < rim;
}

// Newton corrector for the matching system augmented with the arclength
// phase condition t . (X - X_pred) = 0.
bool correct_point(const ShootingContext& sc, const Vec3& t,
                   const Vec3& X_pred, Vec3& X_out) {
  Vec3 X = X_pred;
  if (!in_domain(sc, X)) return false;
  Residual F = matching_F(sc, X);
  for (int it = 0; it < 12; ++it) {
    const double c = dot3(t, sub3(X, X_pred));
    if (F.norm() < 1e-11 && std::abs(c) < 1e-10) {
      X_out = X;
      return true;
    }
    Vec3 row1, row2;
    matching_J(sc, X, row1, row2);
    Vec3 dX;
    if (!solve3({row1, row2, t}, {-F.F1, -F.F2, -c}, dX)) return false;
    double damp = 1.0;
    bool stepped = false;
    for (int half = 0; half < 5; ++half) {
      const Vec3 trial = add3(X, scale3(dX, damp));
      if (in_domain(sc, trial)) {
        const Residual Ft = matching_F(sc, trial);
        if (Ft.norm() <= F.norm() * (1.0 - 1e-4 * damp) ||
            Ft.norm() < 1e-11) {
          X = trial;
          F = Ft;
          stepped = true;
          break;
        }
      }
      damp *= 0.5;
    }
    if (!stepped) return false;
  }
  return false;
}

// Tangent continuation: null direction of the current Jacobian oriented
// along the previous tangent.
Vec3 next_tangent(const ShootingContext& sc, const Vec3& X,
                  const Vec3& t_prev) {
  Vec3 row1, row2;
  matching_J(sc, X, row1, row2);
  Vec3 t;
  if (!solve3({row1, row2, t_prev}, {0.0, 0.0, 1.0}, t)) return t_prev;
  const double n = norm3(t);
  if (!(n > 0.0) || !std::isfinite(n)) return t_prev;
  return scale3(t, 1.0 / n);
}

BranchPoint secondary_point(const ShootingContext& sc, int k, const Vec3& X) {
  BranchPoint p;
  p.lambda = X[0];
  p.beta1 = X[1];
  p.beta2 = X[2];
  p.u1 = sc.kernel().eval_G(X[2]);
  p.k = k;
  p.kind = BranchKind::secondary;
  p.D = sc.eval_D(X[0], X[1], X[2]);
  return p;
}

// Tangent of the odd primary branch (lambda_k(beta), beta, -beta) in the
// continuation space.
Vec3 primary_tangent(const ShootingContext& sc, double beta, double phi) {
  const double T = sc.integrator().theta_integral(beta, phi);
  const double C = sc.integrator().curvature_integral(beta, phi);
  const double g1 = sc.kernel().eval_G_derivs(beta * std::cos(phi)).G1;
  const double dphi = sc.dphi_dbeta(beta, phi);
  const double dlam = 2.0 * T * (C + g1 * dphi);
  Vec3 t = {dlam, 1.0, -1.0};
  return scale3(t, 1.0 / norm3(t));
}

std::string branch_id(int k, BranchKind kind, int sign) {
  std::ostringstream os;
  switch (kind) {
    case BranchKind::trivial:
      return "trivial";
    case BranchKind::secondary:
      os << "S" << k;
      break;
    case BranchKind::odd:
      os << "C" << k << "o";
      break;
    case BranchKind::even:
      os << "C" << k << "e";
      break;
  }
  os << (sign < 0 ? "-" : "+");
  return os.str();
}

DiagramBranch mirror_branch(const DiagramBranch& src) {
  DiagramBranch m = src;
  m.sign = -src.sign;
  m.id = branch_id(src.k, src.kind, m.sign);
  for (BranchPoint& p : m.points) {
    p.beta1 = -p.beta1;
    p.beta2 = -p.beta2;
    p.u1 = -p.u1;
  }
  return m;
}

}  // namespace

const char* branch_kind_name(BranchKind kind) {
  switch (kind) {
    case BranchKind::odd:
      return "odd";
    case BranchKind::even:
      return "even";
    case BranchKind::secondary:
      return "secondary";
    case BranchKind::trivial:
      return "trivial";
  }
  return "?";
}

std::vector<double> make_beta_grid(double beta0, const BetaGrid& grid) {
  if (grid.n < 2) throw DomainError("make_beta_grid: need at least 2 points");
  if (!(grid.rim_gap > 0.0 && grid.rim_gap < 1.0))
    throw DomainError("make_beta_grid: rim_gap must lie in (0,1)");
  // The grid is geometric in distance from the amplitude rim beta0, which is
  // where lambda blows up; that keeps the lambda spacing roughly even.  When
  // a cap is given the ladder ends exactly on it so a capped branch still
  // receives all n points instead of only the few that happen to fall below.
  double d_end = grid.rim_gap * beta0;
  if (grid.beta_max > 0.0 && grid.beta_max < beta0)
    d_end = std::max(beta0 - grid.beta_max, d_end);
  const double ratio = std::pow(d_end / beta0, 1.0 / grid.n);
  std::vector<double> betas;
  betas.reserve(static_cast<size_t>(grid.n));
  double dist = beta0;
  for (int i = 1; i < grid.n; ++i) {
    dist *= ratio;
    betas.push_back(beta0 - dist);
  }
  betas.push_back(beta0 - d_end);
  return betas;
}

std::vector<BranchPoint> trace_primary(const ShootingContext& sc, int k,
                                       Parity parity, int sign,
                                       const BetaGrid& grid) {
  if (k < 1) throw DomainError("trace_primary: k must be >= 1");
  const std::vector<double> betas = make_beta_grid(sc.beta0(), grid);
  std::vector<BranchPoint> points;
  points.reserve(betas.size());
  double phi_hint = -1.0;
  for (const double beta : betas) {
    BranchPoint p;
    if (parity == Parity::odd) {
      const double phi = phi_hint > 0.0 ? sc.solve_phi_k(k, beta, phi_hint)
                                        : sc.solve_phi_k(k, beta);
      phi_hint = phi;
      const double T = sc.integrator().theta_integral(beta, phi);
      p.lambda = T * T;
      p.beta2 = -beta;
    } else {
      p.lambda = sc.lambda_branch(k, Parity::even, beta);
      p.beta2 = beta;
    }
    p.beta1 = beta;
    p.u1 = sc.kernel().eval_G(p.beta2);
    p.k = k;
    p.kind = parity == Parity::odd ? BranchKind::odd : BranchKind::even;
    p.D = sc.eval_D(p.lambda, p.beta1, p.beta2);
    if (!points.empty() && !(p.lambda > points.back().lambda)) {
      std::ostringstream os;
      os << "trace_primary: lambda not increasing at beta = " << p.beta1;
      throw MonotonicityViolation(os.str());
    }
    points.push_back(p);
  }
  if (sign < 0)
    for (BranchPoint& p : points) {
      p.beta1 = -p.beta1;
      p.beta2 = -p.beta2;
      p.u1 = -p.u1;
    }
  return points;
}

SolutionProfile reconstruct_solution(const ShootingContext& sc, double lambda,
                                     double beta1, double beta2, int n_grid) {
  if (!(lambda > 0.0))
    throw DomainError("reconstruct_solution: lambda must be positive");
  if (!(std::abs(beta1) < sc.beta0()) || !(std::abs(beta2) < sc.beta0()))
    throw DomainError("reconstruct_solution: amplitudes must lie below beta0");
  const int n_h = std::max(2, n_grid / 2);
  const double h = 1.0 / n_h;
  const double sq = std::sqrt(lambda);
  const GKernel& gk = sc.kernel();
  const PhaseIntegrator& integ = sc.integrator();

  SolutionProfile prof;
  prof.lambda = lambda;
  prof.beta1 = beta1;
  prof.beta2 = beta2;
  prof.x.reserve(2 * static_cast<size_t>(n_h));
  prof.u.reserve(2 * static_cast<size_t>(n_h));
  prof.ux.reserve(2 * static_cast<size_t>(n_h));

  // left half: u = G(beta1 cos Theta(sqrt(lambda)(x+1))) swept warm in y
  double y_prev = 0.0, th_prev = 0.0;
  for (int j = 0; j < n_h; ++j) {
    const double x = -1.0 + j * h;
    const double y = sq * (x + 1.0);
    const double th = integ.solve_Theta(y, beta1, y_prev, th_prev);
    y_prev = y;
    th_prev = th;
    prof.x.push_back(x);
    prof.u.push_back(gk.eval_G(beta1 * std::cos(th)));
    prof.ux.push_back(-sq * beta1 * std::sin(th));
  }
  const double th_l = integ.solve_Theta(sq, beta1, y_prev, th_prev);
  prof.u_left = gk.eval_G(beta1 * std::cos(th_l));
  prof.ux_left = -sq * beta1 * std::sin(th_l);

  // right half: u = G(beta2 cos Theta(sqrt(lambda)(1-x))), swept from x = 1
  std::vector<double> xs, us, uxs;
  xs.reserve(static_cast<size_t>(n_h));
  us.reserve(static_cast<size_t>(n_h));
  uxs.reserve(static_cast<size_t>(n_h));
  y_prev = 0.0;
  th_prev = 0.0;
  for (int j = 0; j < n_h; ++j) {
    const double x = 1.0 - j * h;
    const double y = sq * (1.0 - x);
    const double th = integ.solve_Theta(y, beta2, y_prev, th_prev);
    y_prev = y;
    th_prev = th;
    xs.push_back(x);
    us.push_back(gk.eval_G(beta2 * std::cos(th)));
    uxs.push_back(sq * beta2 * std::sin(th));
  }
  const double th_r = integ.solve_Theta(sq, beta2, y_prev, th_prev);
  prof.u_right = gk.eval_G(beta2 * std::cos(th_r));
  prof.ux_right = sq * beta2 * std::sin(th_r);
  for (int j = n_h - 1; j >= 0; --j) {
    prof.x.push_back(xs[static_cast<size_t>(j)]);
    prof.u.push_back(us[static_cast<size_t>(j)]);
    prof.ux.push_back(uxs[static_cast<size_t>(j)]);
  }
  return prof;
}

std::vector<std::pair<int, double>> find_primary_bifurcations(
    const ShootingContext& sc, double lambda_max) {
  const double fp0 = sc.kernel().nonlinearity().f_prime_0();
  const double a = sc.coupling();
  std::vector<std::pair<int, double>> out;
  for (int k = 1;; ++k) {
    // odd family: z_k solves a z tan z = 1 in ((k-1) pi, (k-1/2) pi); the
    // pole-free form a z sin z - cos z changes sign across the interval
    auto fn = [&](double z) { return a * z * std::sin(z) - std::cos(z); };
    const double z =
        bisect(fn, (k - 1) * kPi, (k - 0.5) * kPi, 1e-14).x;
    const double lam_odd = z * z / fp0;
    const double lam_even = (k * kPi) * (k * kPi) / fp0;
    if (lam_odd <= lambda_max) out.emplace_back(2 * k - 1, lam_odd);
    if (lam_even <= lambda_max) out.emplace_back(2 * k, lam_even);
    if (lam_odd > lambda_max) break;
  }
  // every listed point must flip the sign of the trivial-state determinant
  for (const auto& [n, lam] : out) {
    const double delta = 1e-6 * std::max(1.0, lam);
    const double dm = sc.eval_D(lam - delta, 0.0, 0.0);
    const double dp = sc.eval_D(lam + delta, 0.0, 0.0);
    if (!(dm * dp < 0.0)) {
      std::ostringstream os;
      os << "find_primary_bifurcations: no determinant sign flip at lambda = "
         << lam;
      throw NoSignChange(os.str());
    }
  }
  return out;
}

std::vector<BifurcationPoint> find_secondary_bifurcations(
    const ShootingContext& sc, int k, int n_scan) {
  if (k < 1)
    throw DomainError("find_secondary_bifurcations: k must be >= 1");
  if (n_scan < 100)
    throw DomainError("find_secondary_bifurcations: scan needs >= 100 points");
  const GKernel& gk = sc.kernel();
  const PhaseIntegrator& integ = sc.integrator();

  // Q_beta along the branch, evaluated lean: only the curvature integral and
  // one kernel slope are needed once phi_k is known.
  auto q_beta = [&](double beta, double& phi_hint) {
    const double phi = phi_hint > 0.0 ? sc.solve_phi_k(k, beta, phi_hint)
                                      : sc.solve_phi_k(k, beta);
    phi_hint = phi;
    const double C = integ.curvature_integral(beta, phi);
    const double w = beta * std::cos(phi);
    return -std::sin(phi) + w / gk.eval_G_derivs(w).G1 * C;
  };

  const std::vector<double> betas =
      make_beta_grid(sc.beta0(), {n_scan, 1e-6, -1.0});
  std::vector<BifurcationPoint> found;
  double phi_hint = -1.0;
  double prev_beta = betas.front();
  double prev_val = q_beta(prev_beta, phi_hint);
  for (size_t i = 1; i < betas.size(); ++i) {
    const double beta = betas[i];
    const double val = q_beta(beta, phi_hint);
    if ((prev_val < 0.0 && val >= 0.0) || (prev_val > 0.0 && val <= 0.0)) {
      double hint = phi_hint;
      auto fn = [&](double b) { return q_beta(b, hint); };
      const double beta_star = bisect(fn, prev_beta, beta, 1e-12).x;
      BifurcationPoint bp;
      bp.k = k;
      bp.sign = +1;
      bp.beta_star = beta_star;
      bp.phi_star = sc.solve_phi_k(k, beta_star, hint);
      const double T = integ.theta_integral(beta_star, bp.phi_star);
      bp.lambda_star = T * T;
      bp.u1 = sc.kernel().eval_G(-beta_star);  // branch point is (beta*, -beta*)
      found.push_back(bp);
    }
    prev_beta = beta;
    prev_val = val;
  }
  if (found.empty())
    throw NoRootFound(
        "find_secondary_bifurcations: no sign change of Q_beta on (0, beta0); "
        "endpoint sign structure guarantees one, so quadrature is suspect");
  return found;
}

SecondaryBranch trace_secondary(const ShootingContext& sc,
                                const BifurcationPoint& origin, double step,
                                int n_steps, double lambda_max) {
  if (!(step > 0.0)) step = 1e-3 * sc.beta0();
  const double step_cap = 0.05;

  const Vec3 X0 =
      state(origin.lambda_star, origin.beta_star, -origin.beta_star);

  // Initial tangent: the null direction of the matching Jacobian transverse
  // to the primary branch.  A rank-one shift along the primary tangent
  // leaves exactly that direction in the kernel of J^T J.
  Vec3 row1, row2;
  matching_J(sc, X0, row1, row2);
  const Vec3 tp = primary_tangent(sc, origin.beta_star, origin.phi_star);
  Mat3 M;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      M[i][j] = row1[i] * row1[j] + row2[i] * row2[j] + tp[i] * tp[j];
  Mat3 V;
  Vec3 d;
  eigen3_sym(M, V, d);
  int imin = 0;
  if (d[1] < d[imin]) imin = 1;
  if (d[2] < d[imin]) imin = 2;
  Vec3 t0 = {V[0][imin], V[1][imin], V[2][imin]};
  t0 = scale3(t0, 1.0 / norm3(t0));

  auto run_direction = [&](Vec3 t) {
    std::vector<BranchPoint> pts;
    Vec3 X = X0;
    double h = step;
    int clean = 0;
    for (int i = 0; i < n_steps; ++i) {
      Vec3 Xc;
      bool ok = false;
      for (int tries = 0; tries <= 8; ++tries) {
        const Vec3 X_pred = add3(X, scale3(t, h));
        if (correct_point(sc, t, X_pred, Xc)) {
          ok = true;
          break;
        }
        h *= 0.5;
        clean = 0;
      }
      if (!ok) break;  // partial branch
      X = Xc;
      t = next_tangent(sc, X, t);
      pts.push_back(secondary_point(sc, origin.k, X));
      if (X[0] > lambda_max) break;
      if (++clean >= 4) {
        h = std::min(2.0 * h, step_cap);
        clean = 0;
      }
    }
    return pts;
  };

  const std::vector<BranchPoint> fwd = run_direction(t0);
  const std::vector<BranchPoint> bwd = run_direction(scale3(t0, -1.0));

  SecondaryBranch br;
  br.origin = origin;
  br.points.reserve(bwd.size() + fwd.size() + 1);
  for (auto it = bwd.rbegin(); it != bwd.rend(); ++it) br.points.push_back(*it);
  br.points.push_back(secondary_point(sc, origin.k, X0));
  for (const BranchPoint& p : fwd) br.points.push_back(p);
  return br;
}

Diagram assemble_diagram(const ShootingContext& sc, int k_max,
                         double lambda_max, const DiagramOptions& opts) {
  if (k_max < 1) throw DomainError("assemble_diagram: k_max must be >= 1");
  if (!(lambda_max > 0.0))
    throw DomainError("assemble_diagram: lambda_max must be positive");
  const GKernel& gk = sc.kernel();

  Diagram dg;
  dg.nonlinearity = gk.nonlinearity().name();
  dg.a = sc.coupling();
  dg.lambda_max = lambda_max;

  const ConditionReport rep = check_conditions(gk.nonlinearity());
  if (!rep.strong())
    dg.warnings.push_back(
        "structural conditions on f not fully verified: branch count and "
        "bifurcation pattern may deviate from the guaranteed one");

  // trivial branch along the lambda axis
  {
    DiagramBranch triv;
    triv.id = branch_id(0, BranchKind::trivial, 0);
    triv.k = 0;
    triv.kind = BranchKind::trivial;
    triv.sign = 0;
    const int m = std::max(2, opts.trivial_points);
    for (int j = 1; j <= m; ++j) {
      BranchPoint p;
      p.lambda = lambda_max * j / m;
      p.kind = BranchKind::trivial;
      p.D = sc.eval_D(p.lambda, 0.0, 0.0);
      triv.points.push_back(p);
    }
    dg.branches.push_back(std::move(triv));
  }

  for (const auto& [n, lam] : find_primary_bifurcations(sc, lambda_max)) {
    if (n > 2 * k_max) continue;
    dg.primary_bifurcations.emplace_back(n, lam);
    if (!(lam < lambda_max)) continue;  // branch origin only
    const int k = (n + 1) / 2;
    const Parity parity = n % 2 == 1 ? Parity::odd : Parity::even;
    BetaGrid grid{opts.branch_points, 1e-6, -1.0};
    try {
      grid.beta_max = sc.lambda_to_beta(k, parity, lambda_max);
    } catch (const NoRootFound&) {
      // lambda_max beyond the resolvable sweep: use the full ladder
    }
    DiagramBranch plus;
    plus.k = k;
    plus.kind = parity == Parity::odd ? BranchKind::odd : BranchKind::even;
    plus.sign = +1;
    plus.id = branch_id(k, plus.kind, +1);
    plus.points = trace_primary(sc, k, parity, +1, grid);
    dg.branches.push_back(mirror_branch(plus));
    dg.branches.push_back(std::move(plus));
  }

  // secondary bifurcation points live on the odd branches
  for (int k = 1; k <= k_max; ++k) {
    const auto it = std::find_if(
        dg.primary_bifurcations.begin(), dg.primary_bifurcations.end(),
        [&](const auto& p) { return p.first == 2 * k - 1; });
    if (it == dg.primary_bifurcations.end()) continue;
    std::vector<BifurcationPoint> roots;
    try {
      roots = find_secondary_bifurcations(sc, k, opts.scan_points);
    } catch (const NoRootFound&) {
      std::ostringstream os;
      os << "no secondary bifurcation detected on the odd branch k = " << k;
      dg.warnings.push_back(os.str());
      continue;
    }
    if (roots.size() > 1) {
      std::ostringstream os;
      os << "multiple secondary bifurcation candidates (" << roots.size()
         << ") on the odd branch k = " << k;
      dg.warnings.push_back(os.str());
    }
    int idx = 0;
    for (const BifurcationPoint& bp : roots) {
      if (bp.lambda_star > lambda_max) continue;
      BifurcationPoint neg = bp;
      neg.sign = -1;
      neg.beta_star = -bp.beta_star;
      neg.u1 = -bp.u1;
      dg.secondary_bifurcations.push_back(bp);
      dg.secondary_bifurcations.push_back(neg);

      const double h0 =
          opts.secondary_step > 0.0 ? opts.secondary_step : 1e-3 * sc.beta0();
      SecondaryBranch sec =
          trace_secondary(sc, bp, h0, opts.secondary_steps, lambda_max);
      DiagramBranch sb;
      sb.k = k;
      sb.kind = BranchKind::secondary;
      sb.sign = +1;
      sb.id = branch_id(k, BranchKind::secondary, +1);
      if (idx > 0) sb.id += "_" + std::to_string(idx);
      sb.points = std::move(sec.points);
      dg.branches.push_back(mirror_branch(sb));
      dg.branches.push_back(std::move(sb));
      ++idx;
    }
  }
  return dg;
}

}  // namespace bifurcata
