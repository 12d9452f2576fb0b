#include "bifurcata/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bifurcata/branches.hpp"
#include "bifurcata/errors.hpp"
#include "bifurcata/oracle.hpp"
#include "bifurcata/spectrum.hpp"

namespace bifurcata {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string fmtl(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Collects the outcome of one check.  The first failed requirement wins and
// becomes the detail line; `note` carries the success summary.
struct Probe {
  bool ok = true;
  std::string msg;
  std::string note;

  void fail(const std::string& what) {
    if (ok) {
      ok = false;
      msg = what;
    }
  }
  void require(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
};

// Tracks the worst |value| seen against a fixed bound.
class Bound {
 public:
  explicit Bound(double bound) : bound_(bound) {}
  bool add(double v) {
    const double a = std::fabs(v);
    if (a > worst_) worst_ = a;
    ++n_;
    return a < bound_;
  }
  double worst() const { return worst_; }
  std::string summary(const std::string& what) const {
    return what + " worst " + fmt(worst_) + " over " + std::to_string(n_) +
           " samples (bound " + fmt(bound_) + ")";
  }

 private:
  double bound_;
  double worst_ = 0.0;
  int n_ = 0;
};

struct Runner {
  std::vector<CheckResult>& results;
  std::ostream* log;

  void operator()(const std::string& id,
                  const std::function<void(Probe&)>& fn) {
    CheckResult r;
    r.id = id;
    const auto t0 = std::chrono::steady_clock::now();
    Probe p;
    try {
      fn(p);
      r.passed = p.ok;
      r.detail = p.ok ? p.note : p.msg;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (log) {
      char sec[24];
      std::snprintf(sec, sizeof sec, "%7.2fs", r.seconds);
      *log << (r.passed ? "PASS " : "FAIL ") << sec << "  " << r.id
           << (r.detail.empty() ? "" : "  -- " + r.detail) << '\n';
    }
    results.push_back(std::move(r));
  }
};

// Reference root of a z tan z = 1 in ((k-1) pi, (k-1/2) pi), by pure
// bisection on the literal equation; the bracket stops just short of the
// tangent pole, where the left side is large and positive.
double z_root(double a, int k) {
  auto f = [a](double z) { return a * z * std::tan(z) - 1.0; };
  const double lo = (k - 1) * kPi + (k == 1 ? 1e-12 : 1e-9);
  const double hi = (k - 0.5) * kPi * (1.0 - 1e-13);
  return root_oracle(f, lo, hi);
}

int sign_changes_of(const std::vector<double>& v) { return count_sign_changes(v); }

// ---------------------------------------------------------------------------
// Acceptance checks.  Each takes the context it measures; checks 1-5 are
// shared between the cubic run and the sine re-run.
// ---------------------------------------------------------------------------

void crit_primary_values(Probe& p, const ShootingContext& sc) {
  const double a = sc.coupling();
  const double fp0 = sc.kernel().nonlinearity().f_prime_0();
  const double expected[4] = {
      z_root(a, 1) * z_root(a, 1) / fp0, kPi * kPi / fp0,
      z_root(a, 2) * z_root(a, 2) / fp0, 4.0 * kPi * kPi / fp0};
  const double lambda_max = expected[3] * 1.02 + 0.5;
  const auto bifs = find_primary_bifurcations(sc, lambda_max);
  p.require(bifs.size() >= 4, "expected at least 4 bifurcation values below " +
                                  fmt(lambda_max) + ", got " +
                                  std::to_string(bifs.size()));
  if (!p.ok) return;
  Bound b(1e-10);
  for (int i = 0; i < 4; ++i) {
    p.require(bifs[i].first == i + 1,
              "bifurcation index " + std::to_string(bifs[i].first) +
                  " where " + std::to_string(i + 1) + " expected");
    p.require(b.add(bifs[i].second - expected[i]),
              "lambda_" + std::to_string(i + 1) + " = " +
                  fmtl(bifs[i].second) + " differs from oracle " +
                  fmtl(expected[i]) + " by " +
                  fmt(bifs[i].second - expected[i]));
  }
  p.note = b.summary("|computed - oracle|");
}

void crit_branch_residuals(Probe& p, const ShootingContext& sc, bool quick) {
  const Nonlinearity& nl = sc.kernel().nonlinearity();
  const double a = sc.coupling();
  const int n_pts = quick ? 10 : 50;
  BetaGrid grid;
  grid.n = n_pts;
  grid.rim_gap = 1e-4;
  const auto betas = make_beta_grid(sc.beta0(), grid);
  Bound match(1e-7), prof_gap(1e-7);
  for (int k = 1; k <= 2 && p.ok; ++k) {
    for (Parity par : {Parity::odd, Parity::even}) {
      for (double beta : betas) {
        const double lam = sc.lambda_branch(k, par, beta);
        const double beta2 = par == Parity::odd ? -beta : beta;
        const IvpResult left = integrate_ivp(
            nl, lam, sc.kernel().eval_G(beta), Side::left, 8000);
        const IvpResult right = integrate_ivp(
            nl, lam, sc.kernel().eval_G(beta2), Side::right, 8000);
        const double r1 = (left.u_end + a * left.ux_end) -
                          (right.u_end - a * right.ux_end);
        const double r2 = left.ux_end - right.ux_end;
        const SolutionProfile prof =
            reconstruct_solution(sc, lam, beta, beta2, 33);
        const double dv = std::max(
            std::max(std::fabs(prof.u_left - left.u_end),
                     std::fabs(prof.ux_left - left.ux_end)),
            std::max(std::fabs(prof.u_right - right.u_end),
                     std::fabs(prof.ux_right - right.ux_end)));
        const double where = lam;
        if (!match.add(std::max(std::fabs(r1), std::fabs(r2))))
          p.fail("interface residual " + fmt(std::max(std::fabs(r1),
                                                      std::fabs(r2))) +
                 " at k=" + std::to_string(k) +
                 (par == Parity::odd ? " odd" : " even") +
                 " lambda=" + fmt(where));
        if (!prof_gap.add(dv))
          p.fail("profile/oracle gap " + fmt(dv) + " at k=" +
                 std::to_string(k) + (par == Parity::odd ? " odd" : " even") +
                 " lambda=" + fmt(where));
        if (!p.ok) return;
      }
    }
  }
  p.note = match.summary("interface residual") + "; " +
           prof_gap.summary("profile gap");
}

void crit_branch_monotonicity(Probe& p, const ShootingContext& sc,
                              bool quick) {
  BetaGrid grid;
  grid.n = quick ? 60 : 200;
  std::string spans;
  for (int k = 1; k <= 2 && p.ok; ++k) {
    for (Parity par : {Parity::odd, Parity::even}) {
      std::vector<BranchPoint> pts;
      try {
        pts = trace_primary(sc, k, par, +1, grid);
      } catch (const MonotonicityViolation& e) {
        p.fail(std::string("monotonicity violation on k=") +
               std::to_string(k) + (par == Parity::odd ? " odd" : " even") +
               ": " + e.what());
        return;
      }
      p.require(static_cast<int>(pts.size()) == grid.n,
                "expected " + std::to_string(grid.n) + " points, got " +
                    std::to_string(pts.size()));
      for (size_t i = 1; i < pts.size(); ++i)
        p.require(pts[i].lambda > pts[i - 1].lambda,
                  "lambda not strictly increasing at point " +
                      std::to_string(i) + " of k=" + std::to_string(k) +
                      (par == Parity::odd ? " odd" : " even"));
      if (!p.ok) return;
      if (!spans.empty()) spans += ", ";
      spans += "k" + std::to_string(k) +
               (par == Parity::odd ? "o" : "e") + " [" +
               fmt(pts.front().lambda) + ", " + fmt(pts.back().lambda) + "]";
    }
  }
  p.note = std::to_string(grid.n) +
           " clustered points per branch, lambda strictly increasing: " +
           spans;
}

void crit_secondary_roots(Probe& p, const ShootingContext& sc, bool quick) {
  const int n_scan = quick ? 2000 : 10000;
  std::string note;
  for (int k = 1; k <= 2 && p.ok; ++k) {
    const auto bifs = find_secondary_bifurcations(sc, k, n_scan);
    p.require(bifs.size() == 1,
              "expected exactly one sign change for k=" + std::to_string(k) +
                  ", found " + std::to_string(bifs.size()));
    if (!p.ok) return;
    const RIJ rij = sc.eval_RIJ(bifs[0].beta_star, bifs[0].phi_star);
    p.require(std::fabs(rij.R) < 1e-9,
              "branch-function residual " + fmt(rij.R) + " at k=" +
                  std::to_string(k) + " root (bound 1e-9)");
    if (!note.empty()) note += "; ";
    note += "k=" + std::to_string(k) + ": lambda*=" +
            fmtl(bifs[0].lambda_star) + ", beta*=" + fmtl(bifs[0].beta_star) +
            ", |R|=" + fmt(std::fabs(rij.R));
  }
  p.note = note;
}

void crit_morse_switch(Probe& p, const ShootingContext& sc, bool quick) {
  const int n_fd = quick ? 300 : 600;
  const double fp0 = sc.kernel().nonlinearity().f_prime_0();
  const double lam1 = z_root(sc.coupling(), 1);
  const double lambda_1 = lam1 * lam1 / fp0;
  const auto bifs = find_secondary_bifurcations(sc, 1, 2000);
  p.require(bifs.size() == 1, "expected one symmetry-breaking point on k=1");
  if (!p.ok) return;
  const double lam_star = bifs[0].lambda_star;

  // odd k=1 branch: index 1 strictly below lambda*, 0 strictly above
  for (int i = 0; i < 5 && p.ok; ++i) {
    const double lam = lambda_1 + (i + 1) * (lam_star - lambda_1) / 7.0;
    const double beta = sc.lambda_to_beta(1, Parity::odd, lam);
    const SpectrumResult s = compute_spectrum(sc, lam, beta, -beta, n_fd, 4);
    p.require(s.morse_index == 1 && !s.degenerate,
              "odd branch at lambda=" + fmt(lam) + ": index " +
                  std::to_string(s.morse_index) +
                  (s.degenerate ? " (degenerate)" : "") + ", expected 1");
  }
  for (int i = 0; i < 5 && p.ok; ++i) {
    const double lam = lam_star * (1.0 + 0.35 * (i + 1));
    const double beta = sc.lambda_to_beta(1, Parity::odd, lam);
    const SpectrumResult s = compute_spectrum(sc, lam, beta, -beta, n_fd, 4);
    p.require(s.morse_index == 0 && !s.degenerate,
              "odd branch at lambda=" + fmt(lam) + ": index " +
                  std::to_string(s.morse_index) +
                  (s.degenerate ? " (degenerate)" : "") + ", expected 0");
  }

  // even k=1 branch: index 2 throughout, never degenerate
  const double lambda_2 = kPi * kPi / fp0;
  for (int i = 0; i < 10 && p.ok; ++i) {
    const double lam = lambda_2 * (1.15 + 0.45 * i);
    const double beta = sc.lambda_to_beta(1, Parity::even, lam);
    const SpectrumResult s = compute_spectrum(sc, lam, beta, beta, n_fd, 4);
    p.require(s.morse_index == 2 && !s.degenerate,
              "even branch at lambda=" + fmt(lam) + ": index " +
                  std::to_string(s.morse_index) +
                  (s.degenerate ? " (degenerate)" : "") + ", expected 2");
  }

  // at the symmetry-breaking point itself the zero eigenvalue must be
  // flagged as inside the zero tolerance band
  if (p.ok) {
    const double beta = sc.lambda_to_beta(1, Parity::odd, lam_star);
    const SpectrumResult s =
        compute_spectrum(sc, lam_star, beta, -beta, n_fd, 4);
    p.require(s.degenerate,
              "no degeneracy flag at the symmetry-breaking point (zero "
              "tolerance " +
                  fmt(s.zero_tolerance) + ")");
    if (p.ok)
      p.note = "index 1 below / 0 above lambda*=" + fmt(lam_star) +
               ", even branch index 2 at 10 points, degeneracy flagged only "
               "at lambda* (band " +
               fmt(s.zero_tolerance) + ")";
  }
}

void crit_trivial_spectrum(Probe& p, const ShootingContext& sc, bool quick) {
  const double lam = 5.0;
  const int n_lo = quick ? 150 : 250;
  const int m = 6;
  const auto exact = trivial_eigenvalues(sc, lam, m);
  const SpectrumResult lo = compute_spectrum(sc, lam, 0.0, 0.0, n_lo, m);
  const SpectrumResult hi = compute_spectrum(sc, lam, 0.0, 0.0, 2 * n_lo, m);
  const double scale = std::max(1.0, std::fabs(exact[0]));
  p.require(lo.eigenvalues.size() >= m && hi.eigenvalues.size() >= m,
            "window came back short");
  if (!p.ok) return;
  Bound b(1e-6 * scale);
  for (int i = 0; i < m; ++i)
    p.require(b.add(hi.eigenvalues[i] - exact[i]),
              "eigenvalue " + std::to_string(i) + " = " +
                  fmtl(hi.eigenvalues[i]) + " vs closed form " +
                  fmtl(exact[i]));
  // second-order convergence: the per-eigenvalue error estimate is
  // |mu_n - mu_2n| / 3 and must shrink by about 4 when n doubles; modes the
  // grid represents exactly sit at rounding level and are excluded.
  int genuine = 0;
  double ratio_lo = 1e9, ratio_hi = 0.0;
  for (int i = 0; i < m && p.ok; ++i) {
    if (lo.errors[i] <= 1e-8 * scale) continue;
    ++genuine;
    const double ratio = lo.errors[i] / hi.errors[i];
    ratio_lo = std::min(ratio_lo, ratio);
    ratio_hi = std::max(ratio_hi, ratio);
    p.require(ratio >= 3.5 && ratio <= 4.5,
              "error ratio " + fmt(ratio) + " for eigenvalue " +
                  std::to_string(i) + " outside [3.5, 4.5]");
  }
  p.require(genuine >= 3, "only " + std::to_string(genuine) +
                              " eigenvalues carry measurable grid error");
  if (p.ok)
    p.note = b.summary("|fd - closed form|") + "; doubling ratios in [" +
             fmt(ratio_lo) + ", " + fmt(ratio_hi) + "] on " +
             std::to_string(genuine) + " converging modes";
}

void crit_cross_method(Probe& p, const ShootingContext& sc, bool quick) {
  struct Pt {
    int k;
    Parity par;
    double lam;
  };
  const std::vector<Pt> pts = quick
      ? std::vector<Pt>{{1, Parity::odd, 5.0}, {1, Parity::even, 12.0}}
      : std::vector<Pt>{{1, Parity::odd, 2.0},  {1, Parity::odd, 5.0},
                        {1, Parity::even, 12.0}, {1, Parity::even, 20.0},
                        {2, Parity::odd, 13.0},  {2, Parity::even, 42.0}};
  const int n_fd = quick ? 800 : 2000;
  const int n_steps = quick ? 2000 : 4000;
  Bound rel(1e-4);
  for (const Pt& q : pts) {
    const double beta = sc.lambda_to_beta(q.k, q.par, q.lam);
    const double beta2 = q.par == Parity::odd ? -beta : beta;
    const SpectrumResult fd =
        compute_spectrum(sc, q.lam, beta, beta2, n_fd, 5);
    const auto checks = eigen_cross_check(sc, q.lam, beta, beta2, fd, 5, n_steps);
    p.require(checks.size() == 5, "cross-check returned " +
                                      std::to_string(checks.size()) +
                                      " of 5 eigenvalues");
    for (size_t r = 0; r < checks.size() && p.ok; ++r) {
      const EigenCheck& c = checks[r];
      const double d =
          std::fabs(c.mu_fd - c.mu_shoot) / std::max(1.0, std::fabs(c.mu_shoot));
      if (!rel.add(d))
        p.fail("fd/shooting mismatch " + fmt(d) + " at rank " +
               std::to_string(r) + ", lambda=" + fmt(q.lam));
      p.require(c.zeros == static_cast<int>(r),
                "eigenfunction of rank " + std::to_string(r) + " has " +
                    std::to_string(c.zeros) + " sign changes at lambda=" +
                    fmt(q.lam));
      const bool even_rank = r % 2 == 0;
      p.require((c.end_product > 0.0) == even_rank,
                "end-sign rule violated at rank " + std::to_string(r) +
                    ", lambda=" + fmt(q.lam));
    }
    if (!p.ok) return;
  }
  p.note = rel.summary("relative fd/shooting gap") + " across " +
           std::to_string(pts.size()) + " branch points, zero counts and "
           "end signs all consistent";
}

void crit_sign_properties(Probe& p, const ShootingContext& sc, bool quick) {
  const GKernel& gk = sc.kernel();
  const PhaseIntegrator& integ = sc.integrator();
  const int n_beta = quick ? 12 : 50;
  const int n_fd = quick ? 250 : 400;
  BetaGrid grid;
  grid.n = n_beta;
  grid.rim_gap = 1e-3;
  const auto betas = make_beta_grid(sc.beta0(), grid);
  double min_pb = 1e300, min_gap = 1e300, max_mu_odd = -1e300,
         max_mu_even = -1e300, min_D = 1e300;
  for (int k = 1; k <= 2 && p.ok; ++k) {
    const double want_sign = (k % 2 == 1) ? +1.0 : -1.0;
    for (double beta : betas) {
      const double phi_k = sc.solve_phi_k(k, beta);
      const double lam_o = sc.lambda_branch(k, Parity::odd, beta, phi_k);
      const double pb = sc.eval_PQ_beta(lam_o, beta).P_beta;
      min_pb = std::min(min_pb, want_sign * pb);
      p.require(want_sign * pb > 0.0,
                "P_beta sign breaks at k=" + std::to_string(k) +
                    ", beta=" + fmt(beta) + " (P_beta=" + fmt(pb) + ")");

      const SpectrumResult so =
          compute_spectrum(sc, lam_o, beta, -beta, n_fd, 2 * k + 2);
      p.require(static_cast<int>(so.eigenvalues.size()) > 2 * k - 1,
                "odd-branch spectrum window too short");
      if (!p.ok) return;
      const double mu_odd = so.eigenvalues[2 * k - 1];
      max_mu_odd = std::max(max_mu_odd, mu_odd);
      p.require(mu_odd < 0.0, "eigenvalue " + std::to_string(2 * k - 1) +
                                  " = " + fmt(mu_odd) +
                                  " not negative on odd branch at beta=" +
                                  fmt(beta));

      const double lam_e = sc.lambda_branch(k, Parity::even, beta);
      const SpectrumResult se =
          compute_spectrum(sc, lam_e, beta, beta, n_fd, 2 * k + 2);
      p.require(static_cast<int>(se.eigenvalues.size()) > 2 * k,
                "even-branch spectrum window too short");
      if (!p.ok) return;
      const double mu_even = se.eigenvalues[2 * k];
      max_mu_even = std::max(max_mu_even, mu_even);
      p.require(mu_even < 0.0, "eigenvalue " + std::to_string(2 * k) + " = " +
                                   fmt(mu_even) +
                                   " not negative on even branch at beta=" +
                                   fmt(beta));

      const double D = sc.eval_D(lam_e, beta, beta);
      min_D = std::min(min_D, D);
      p.require(D > 0.0, "D = " + fmt(D) + " not positive on even branch at "
                         "beta=" + fmt(beta));

      // curvature-kernel integral inequality, both legs: at a phase with
      // sin(phi) != 0 the integral beats the closed bound, and at the full
      // phase k pi it is positive together with beta
      for (double phi : {phi_k, 0.6, k * kPi - 0.35}) {
        const double lhs = beta * integ.curvature_integral(beta, phi);
        const double c = std::cos(phi), s = std::sin(phi);
        const GDerivs at_edge = gk.eval_G_derivs(beta);
        const GDerivs at_phi = gk.eval_G_derivs(beta * c);
        const double rhs =
            -(at_phi.G1 * c - (at_edge.G1 / at_edge.G) * at_phi.G) / s;
        min_gap = std::min(min_gap, lhs - rhs);
        p.require(lhs > rhs, "integral inequality fails at beta=" +
                                 fmt(beta) + ", phi=" + fmt(phi) + " (lhs " +
                                 fmt(lhs) + " vs bound " + fmt(rhs) + ")");
      }
      const double full = beta * integ.curvature_integral(beta, k * kPi);
      p.require(full > 0.0,
                "integral not positive at full phase, beta=" + fmt(beta));
      if (!p.ok) return;
    }
  }
  if (p.ok)
    p.note = std::to_string(n_beta) +
             " amplitudes per k: min signed P_beta " + fmt(min_pb) +
             ", max odd/even test eigenvalues " + fmt(max_mu_odd) + "/" +
             fmt(max_mu_even) + ", min even-branch D " + fmt(min_D) +
             ", min inequality slack " + fmt(min_gap);
}

void crit_secondary_branch(Probe& p, const ShootingContext& sc, bool quick) {
  const Nonlinearity& nl = sc.kernel().nonlinearity();
  const auto bifs = find_secondary_bifurcations(sc, 1, 2000);
  p.require(bifs.size() == 1, "expected one symmetry-breaking point on k=1");
  if (!p.ok) return;
  const int n_steps = quick ? 60 : 150;
  const int need = quick ? 20 : 50;
  const SecondaryBranch br =
      trace_secondary(sc, bifs[0], 1e-3 * sc.beta0(), n_steps, 30.0);

  size_t origin = 0;
  double best = 1e300;
  for (size_t i = 0; i < br.points.size(); ++i) {
    const double d = std::fabs(br.points[i].lambda - bifs[0].lambda_star) +
                     std::fabs(br.points[i].beta1 - bifs[0].beta_star);
    if (d < best) {
      best = d;
      origin = i;
    }
  }
  const int n_back = static_cast<int>(origin);
  const int n_fwd = static_cast<int>(br.points.size() - origin) - 1;
  p.require(n_back >= need && n_fwd >= need,
            "directions hold " + std::to_string(n_back) + " and " +
                std::to_string(n_fwd) + " points, need " +
                std::to_string(need) + " each");
  if (!p.ok) return;

  Bound res(1e-9), oracle(1e-7);
  double asym_back = 0.0, asym_fwd = 0.0;
  for (size_t i = 0; i < br.points.size() && p.ok; ++i) {
    const BranchPoint& q = br.points[i];
    const PQ s1 = sc.eval_PQ(q.lambda, q.beta1);
    const PQ s2 = sc.eval_PQ(q.lambda, q.beta2);
    const double r =
        std::max(std::fabs(s1.P - s2.P), std::fabs(s1.Q + s2.Q));
    if (!res.add(r))
      p.fail("matching residual " + fmt(r) + " at lambda=" + fmt(q.lambda));
    const int off = static_cast<int>(i) - static_cast<int>(origin);
    const int steps_out = off < 0 ? -off : off;
    if (steps_out >= 1 && steps_out <= 10) {
      const double asym = std::fabs(q.beta1 + q.beta2);
      if (off < 0)
        asym_back = std::max(asym_back, asym);
      else
        asym_fwd = std::max(asym_fwd, asym);
    }
    if (steps_out % 5 == 0 && steps_out > 0) {
      const auto mr =
          matching_residual(nl, sc.coupling(), q.lambda, q.beta1, q.beta2);
      const double m = std::max(std::fabs(mr.first), std::fabs(mr.second));
      if (!oracle.add(m))
        p.fail("direct-integration residual " + fmt(m) + " at lambda=" +
               fmt(q.lambda));
    }
  }
  p.require(asym_back > 1e-4 && asym_fwd > 1e-4,
            "symmetric subspace not left within 10 steps (|beta1+beta2| " +
                fmt(asym_back) + " / " + fmt(asym_fwd) + ")");
  if (p.ok)
    p.note = std::to_string(n_back) + "+" + std::to_string(n_fwd) +
             " points; " + res.summary("matching residual") + "; " +
             oracle.summary("every-5th direct residual") +
             "; |beta1+beta2| reaches " + fmt(asym_back) + "/" +
             fmt(asym_fwd) + " within 10 steps";
}

void crit_symmetry_exactness(Probe& p, const ShootingContext& sc,
                             bool quick) {
  std::mt19937 rng(20240817u);
  std::uniform_real_distribution<double> amp(0.05, 0.92);
  std::uniform_real_distribution<double> lam_d(0.3, 18.0);
  std::uniform_int_distribution<int> coin(0, 1);
  const int n_pq = quick ? 12 : 40;
  const int n_phi = quick ? 8 : 20;
  const int n_mirror = quick ? 2 : 6;
  Bound odd_pq(1e-12), even_phi(1e-12), mirror(1e-12);

  for (int i = 0; i < n_pq && p.ok; ++i) {
    const double beta =
        (coin(rng) ? 1.0 : -1.0) * amp(rng) * sc.beta0();
    const double lam = lam_d(rng);
    const PQ plus = sc.eval_PQ(lam, beta);
    const PQ minus = sc.eval_PQ(lam, -beta);
    const double dp =
        std::fabs(plus.P + minus.P) / std::max(1.0, std::fabs(plus.P));
    const double dq =
        std::fabs(plus.Q + minus.Q) / std::max(1.0, std::fabs(plus.Q));
    if (!odd_pq.add(std::max(dp, dq)))
      p.fail("P/Q oddness off by " + fmt(std::max(dp, dq)) + " at beta=" +
             fmt(beta) + ", lambda=" + fmt(lam));
  }

  for (int i = 0; i < n_phi && p.ok; ++i) {
    const double beta = amp(rng) * sc.beta0();
    const int k = 1 + coin(rng);
    const double d = sc.solve_phi_k(k, beta) - sc.solve_phi_k(k, -beta);
    if (!even_phi.add(d))
      p.fail("phi_k not even in beta at k=" + std::to_string(k) +
             ", beta=" + fmt(beta) + " (gap " + fmt(d) + ")");
  }

  for (int i = 0; i < n_mirror && p.ok; ++i) {
    const double beta = amp(rng) * sc.beta0();
    const int k = 1 + coin(rng);
    const double lp = sc.lambda_branch(k, Parity::odd, beta);
    const double lm = sc.lambda_branch(k, Parity::odd, -beta);
    if (!mirror.add((lp - lm) / std::max(1.0, lp)))
      p.fail("mirrored branch lambda differs by " + fmt(lp - lm) +
             " at k=" + std::to_string(k) + ", beta=" + fmt(beta));
    const SolutionProfile pr_p = reconstruct_solution(sc, lp, beta, -beta, 129);
    const SolutionProfile pr_m = reconstruct_solution(sc, lp, -beta, beta, 129);
    double worst = 0.0;
    for (size_t j = 0; j < pr_p.u.size(); ++j)
      worst = std::max(worst, std::fabs(pr_m.u[j] + pr_p.u[j]) /
                                  std::max(1.0, std::fabs(pr_p.u[j])));
    worst = std::max(worst, std::fabs(pr_m.u_left + pr_p.u_left));
    worst = std::max(worst, std::fabs(pr_m.u_right + pr_p.u_right));
    if (!mirror.add(worst))
      p.fail("mirrored profile differs from negated profile by " +
             fmt(worst) + " at k=" + std::to_string(k) + ", beta=" +
             fmt(beta));
  }
  if (p.ok)
    p.note = odd_pq.summary("P/Q oddness") + "; " +
             even_phi.summary("phi_k evenness") + "; " +
             mirror.summary("mirror-branch identity");
}

void crit_completeness(Probe& p, const ShootingContext& sc, bool quick) {
  const Nonlinearity& nl = sc.kernel().nonlinearity();
  const double a = sc.coupling();
  const double fp0 = nl.f_prime_0();
  const int n_cells = quick ? 120 : 400;
  const double edge = sc.beta0() * (1.0 - 1e-6);
  const double cell = 2.0 * edge / n_cells;

  // symmetry-breaking points; the branch through each is traced on first use
  const auto bifs1 = find_secondary_bifurcations(sc, 1, 4000);
  p.require(bifs1.size() == 1, "expected one symmetry-breaking point on k=1");
  const auto bifs2 = find_secondary_bifurcations(sc, 2, 4000);
  p.require(bifs2.size() == 1, "expected one symmetry-breaking point on k=2");
  if (!p.ok) return;
  const std::vector<BifurcationPoint> origins = {bifs1[0], bifs2[0]};
  std::vector<SecondaryBranch> traced(origins.size());
  std::vector<bool> have(origins.size(), false);
  auto branch_of = [&](size_t i) -> const SecondaryBranch& {
    if (!have[i]) {
      traced[i] = trace_secondary(sc, origins[i], 1e-3 * sc.beta0(),
                                  quick ? 220 : 400, 13.0);
      have[i] = true;
    }
    return traced[i];
  };

  int total_cells = 0;
  std::string note;
  for (double lam : {0.5, 5.0, 12.0}) {
    // catalogue of all solutions the classification admits at this lambda
    std::vector<std::pair<double, double>> cat;
    cat.emplace_back(0.0, 0.0);
    for (int k = 1;; ++k) {
      const double zk = z_root(a, k);
      const double lam_odd = zk * zk / fp0;
      const double lam_even = k * kPi * k * kPi / fp0;
      if (lam_odd >= lam && lam_even >= lam) break;
      if (lam_odd < lam) {
        const double b = sc.lambda_to_beta(k, Parity::odd, lam);
        cat.emplace_back(b, -b);
        cat.emplace_back(-b, b);
      }
      if (lam_even < lam) {
        const double b = sc.lambda_to_beta(k, Parity::even, lam);
        cat.emplace_back(b, b);
        cat.emplace_back(-b, -b);
      }
    }
    for (size_t oi = 0; oi < origins.size(); ++oi) {
      if (origins[oi].lambda_star >= lam) continue;
      const SecondaryBranch& br = branch_of(oi);
      for (size_t i = 1; i < br.points.size(); ++i) {
        const double l0 = br.points[i - 1].lambda, l1 = br.points[i].lambda;
        if ((l0 - lam) * (l1 - lam) > 0.0 || l0 == l1) continue;
        const double t = (lam - l0) / (l1 - l0);
        const double b1 = br.points[i - 1].beta1 +
                          t * (br.points[i].beta1 - br.points[i - 1].beta1);
        const double b2 = br.points[i - 1].beta2 +
                          t * (br.points[i].beta2 - br.points[i - 1].beta2);
        cat.emplace_back(b1, b2);
        cat.emplace_back(b2, b1);
        cat.emplace_back(-b1, -b2);
        cat.emplace_back(-b2, -b1);
      }
    }

    const SolutionScan scan = scan_solution_set(nl, a, lam, n_cells);
    total_cells += static_cast<int>(scan.cells.size());

    // Corner sampling is unreliable against the rim, where the interface
    // data has unbounded slope: a cell there can show a sign change of both
    // residual components at its corners although the two zero curves never
    // meet inside it.  Every flagged cell the catalogue does not claim is
    // therefore re-examined on progressively finer corner grids; only a
    // joint sign change that survives the cascade counts as a solution.
    const GKernel& gk = sc.kernel();
    auto pq_at = [&](double beta) {
      const IvpResult l =
          integrate_ivp(nl, lam, gk.eval_G(beta), Side::left, 4000);
      return std::pair<double, double>(l.u_end + a * l.ux_end, l.ux_end);
    };
    auto samples = [&](double lo, double hi, int m) {
      std::vector<std::pair<double, double>> v(m + 1);
      for (int t = 0; t <= m; ++t) v[t] = pq_at(lo + (hi - lo) * t / m);
      return v;
    };
    // stage-0 samples are per cell index and shared between both axes
    std::map<int, std::vector<std::pair<double, double>>> axis_cache;
    auto cached_axis = [&](int idx) {
      auto it = axis_cache.find(idx);
      if (it == axis_cache.end())
        it = axis_cache
                 .emplace(idx, samples(scan.beta[idx], scan.beta[idx + 1], 32))
                 .first;
      return it->second;
    };
    struct Box {
      double x0, x1, y0, y1;
    };
    auto survivors = [](const Box& b,
                        const std::vector<std::pair<double, double>>& ax,
                        const std::vector<std::pair<double, double>>& ay,
                        std::vector<Box>& out) {
      const int mx = static_cast<int>(ax.size()) - 1;
      const int my = static_cast<int>(ay.size()) - 1;
      for (int i = 0; i < mx; ++i)
        for (int j = 0; j < my; ++j) {
          double lo1 = 1e300, hi1 = -1e300, lo2 = 1e300, hi2 = -1e300;
          for (int di = 0; di <= 1; ++di)
            for (int dj = 0; dj <= 1; ++dj) {
              const double m1 = ax[i + di].first - ay[j + dj].first;
              const double m2 = ax[i + di].second + ay[j + dj].second;
              lo1 = std::min(lo1, m1);
              hi1 = std::max(hi1, m1);
              lo2 = std::min(lo2, m2);
              hi2 = std::max(hi2, m2);
            }
          if (lo1 <= 0.0 && hi1 >= 0.0 && lo2 <= 0.0 && hi2 >= 0.0)
            out.push_back({b.x0 + (b.x1 - b.x0) * i / mx,
                           b.x0 + (b.x1 - b.x0) * (i + 1) / mx,
                           b.y0 + (b.y1 - b.y0) * j / my,
                           b.y0 + (b.y1 - b.y0) * (j + 1) / my});
        }
    };
    // center of a box still carrying a joint sign change at the finest
    // scale (2048 subdivisions of the cell), or nullopt if refinement
    // separates the zero sets
    auto refine =
        [&](int ci, int cj) -> std::optional<std::pair<double, double>> {
      std::vector<Box> boxes{{scan.beta[ci], scan.beta[ci + 1],
                              scan.beta[cj], scan.beta[cj + 1]}};
      const int stages[3] = {32, 8, 8};
      for (int s = 0; s < 3; ++s) {
        std::vector<Box> next;
        for (const Box& b : boxes) {
          const std::vector<std::pair<double, double>> ax =
              (s == 0) ? cached_axis(ci) : samples(b.x0, b.x1, stages[s]);
          const std::vector<std::pair<double, double>> ay =
              (s == 0) ? cached_axis(cj) : samples(b.y0, b.y1, stages[s]);
          survivors(b, ax, ay, next);
        }
        if (next.empty()) return std::nullopt;
        if (next.size() > 64) next.resize(64);
        boxes = std::move(next);
      }
      return std::make_pair(0.5 * (boxes[0].x0 + boxes[0].x1),
                            0.5 * (boxes[0].y0 + boxes[0].y1));
    };

    int artifacts = 0;
    std::vector<int> claimed(cat.size(), 0);
    for (const auto& c : scan.cells) {
      const double c1 = 0.5 * (scan.beta[c.first] + scan.beta[c.first + 1]);
      const double c2 = 0.5 * (scan.beta[c.second] + scan.beta[c.second + 1]);
      bool matched = false;
      for (size_t j = 0; j < cat.size(); ++j) {
        if (std::max(std::fabs(c1 - cat[j].first),
                     std::fabs(c2 - cat[j].second)) <= 1.5 * cell) {
          matched = true;
          claimed[j] = 1;
        }
      }
      if (matched) continue;
      const auto root = refine(c.first, c.second);
      if (!root) {
        ++artifacts;
        continue;
      }
      bool root_matched = false;
      for (size_t j = 0; j < cat.size(); ++j) {
        if (std::max(std::fabs(root->first - cat[j].first),
                     std::fabs(root->second - cat[j].second)) <= 1.5 * cell) {
          root_matched = true;
          claimed[j] = 1;
        }
      }
      if (!root_matched) {
        p.fail("unclassified solution cell near (beta1, beta2) = (" +
               fmt(root->first) + ", " + fmt(root->second) + ") at lambda=" +
               fmt(lam));
        return;
      }
    }
    for (size_t j = 0; j < cat.size(); ++j)
      p.require(claimed[j] == 1,
                "catalogued solution (" + fmt(cat[j].first) + ", " +
                    fmt(cat[j].second) + ") not detected at lambda=" +
                    fmt(lam));
    if (!p.ok) return;
    if (!note.empty()) note += "; ";
    note += "lambda=" + fmt(lam) + ": " + std::to_string(scan.cells.size()) +
            " cells / " + std::to_string(cat.size()) + " solutions";
    if (artifacts > 0)
      note += " (" + std::to_string(artifacts) + " rim artifacts refuted)";
  }
  p.note = "all " + std::to_string(total_cells) +
           " flagged cells classified (" + note + ")";
}

// ---------------------------------------------------------------------------
// Module property suites (run on the configured problem).
// ---------------------------------------------------------------------------

void props_shape_conditions(Probe& p, const Nonlinearity& nl) {
  const ConditionReport rep = check_conditions(nl);
  std::string flags;
  auto tag = [&](const char* name, bool ok, double margin) {
    if (!flags.empty()) flags += ", ";
    flags += std::string(name) + (ok ? "+" : "-") + " (margin " +
             fmt(margin) + ")";
    return ok;
  };
  const bool shape = tag("shape", rep.shape_ok, rep.margin_shape);
  const bool peak = tag("single-peak", rep.single_peak, rep.margin_peak);
  const bool hdec = tag("h-decreasing", rep.h_decreasing, rep.margin_h);
  const bool tail =
      tag("tail-nonincreasing", rep.tail_nonincreasing, rep.margin_tail);
  tag("slope-ratio<1", rep.slope_ratio_below_one, rep.margin_slope_ratio);
  p.require(shape && peak && hdec && tail,
            "shape conditions fail for '" + nl.name() + "': " + flags);
  p.note = flags;
}

void props_nonlinearity(Probe& p, const ShootingContext& sc) {
  const GKernel& gk = sc.kernel();
  const Nonlinearity& nl = gk.nonlinearity();
  const double b0 = gk.beta0();
  Bound round_trip(5e-12), odd(1e-14), deriv(2e-5), curls(1e-8);
  for (int i = -20; i <= 20; ++i) {
    if (i == 0) continue;
    const double v = 0.999 * b0 * i / 20.0;
    const double u = gk.eval_G(v);
    p.require(std::fabs(u) < 1.0, "|G(v)| >= 1 at v=" + fmt(v));
    const double back = (u >= 0.0 ? 1.0 : -1.0) * std::sqrt(nl.F(u));
    if (!round_trip.add((back - v) / b0))
      p.fail("round trip sgn(u) sqrt(F(u)) != v at v=" + fmt(v));
    if (!odd.add(gk.eval_G(-v) + u)) p.fail("G not odd at v=" + fmt(v));

    // closed-form derivatives against central differences
    if (std::fabs(v) < 0.95 * b0) {
      const double h = 1e-6 * b0;
      const GDerivs d = gk.eval_G_derivs(v);
      const double g1_fd = (gk.eval_G(v + h) - gk.eval_G(v - h)) / (2 * h);
      const double g2_fd = (gk.eval_G_derivs(v + h).G1 -
                            gk.eval_G_derivs(v - h).G1) / (2 * h);
      if (!deriv.add((d.G1 - g1_fd) / std::max(1.0, std::fabs(d.G1))))
        p.fail("G' vs finite difference at v=" + fmt(v));
      if (!deriv.add((d.G2 - g2_fd) / std::max(1.0, std::fabs(d.G2))))
        p.fail("G'' vs finite difference at v=" + fmt(v));

      // curvature pair against the nonlinearity-side expressions
      const CurvaturePair hH = gk.eval_h_H(v);
      const double uu = d.G;
      const double h_f = nl.df(uu) * nl.F(uu) / (nl.f(uu) * nl.f(uu));
      const double H_f = nl.F(uu) - nl.f(uu) * uu;
      if (std::fabs(v) > 0.05 * b0) {
        if (!curls.add((hH.h - h_f) / std::max(1.0, std::fabs(h_f))))
          p.fail("h mismatch vs f-side form at v=" + fmt(v));
        if (!curls.add((hH.H - H_f) / std::max(1.0, std::fabs(H_f))))
          p.fail("H mismatch vs f-side form at v=" + fmt(v));
      }
    }
    if (!p.ok) return;
  }

  // rim behaviour: sqrt(beta0 - v) G'(v) approaches sqrt(beta0 / (-2 f'(1)))
  const double target = std::sqrt(b0 / (-2.0 * nl.df(1.0)));
  auto rim = [&](double gap) {
    const double v = b0 * (1.0 - gap);
    return std::sqrt(b0 - v) * gk.eval_G_derivs(v).G1 / target - 1.0;
  };
  const double r9 = rim(1e-9), r5 = rim(1e-5);
  p.require(std::fabs(r9) < 5e-3,
            "rim asymptote off by " + fmt(r9) + " at gap 1e-9");
  p.require(std::fabs(r9) < std::fabs(r5),
            "rim asymptote not improving toward the edge");
  if (p.ok)
    p.note = round_trip.summary("round trip") + "; " +
             deriv.summary("derivative consistency") +
             "; rim asymptote gap " + fmt(r9);
}

void props_quadrature(Probe& p, const ShootingContext& sc) {
  const GKernel& gk = sc.kernel();
  const PhaseIntegrator& integ = sc.integrator();
  const double b0 = gk.beta0();
  // the Theta solve certifies its residual only to the quadrature's
  // relative target, so the round trip is bounded by that plus the solver's
  // own ftol; two independent solves can differ by twice that over the
  // minimal slope
  Bound vs_oracle(1e-9), round_trip(2e-11), hint_gap(3e-10), split(1e-11);
  for (double frac : {0.3, 0.9, 0.9999}) {
    const double beta = frac * b0;
    const double t = integ.theta_integral(beta, 4.0);
    const double t_o = oracle_phase_integral(gk, beta, 4.0, 0);
    if (!vs_oracle.add((t - t_o) / std::max(1.0, std::fabs(t_o))))
      p.fail("theta integral vs double-exponential oracle at beta=" +
             fmt(beta));
    const double c = integ.curvature_integral(beta, 4.0);
    const double c_o = oracle_phase_integral(gk, beta, 4.0, 1);
    if (!vs_oracle.add((c - c_o) / std::max(1.0, std::fabs(c_o))))
      p.fail("curvature integral vs double-exponential oracle at beta=" +
             fmt(beta));
  }
  const double beta = 0.77 * b0;
  double y_prev = 0.0, th_prev = 0.0;
  for (double y : {0.3, 2.0, 5.0, 11.0}) {
    const double th = integ.solve_Theta(y, beta);
    if (!round_trip.add((integ.theta_integral(beta, th) - y) /
                        std::max(1.0, y)))
      p.fail("solve_Theta round trip at y=" + fmt(y));
    const double th_warm = integ.solve_Theta(y, beta, y_prev, th_prev);
    if (!hint_gap.add(th_warm - th))
      p.fail("hinted solve_Theta disagrees with cold solve at y=" + fmt(y));
    y_prev = y;
    th_prev = th;
    const double lo = 0.4 * th;
    const double parts = integ.theta_integral(beta, lo) +
                         integ.theta_integral_between(beta, lo, th);
    if (!split.add((parts - y) / std::max(1.0, y)))
      p.fail("interval additivity at y=" + fmt(y));
  }
  if (p.ok)
    p.note = vs_oracle.summary("integrals vs oracle") + "; " +
             round_trip.summary("Theta round trip");
}

void props_shooting(Probe& p, const ShootingContext& sc) {
  const Nonlinearity& nl = sc.kernel().nonlinearity();
  const double a = sc.coupling();
  const double b0 = sc.beta0();
  Bound ivp_gap(1e-8), branch_zero(1e-10), fd_gap(1e-6);

  // P and Q against direct integration: P = u(-0) + a u_x(-0) and
  // sqrt(lambda) Q = u_x(-0) for the half solution of height G(beta)
  for (double lam : {0.8, 3.0, 9.0}) {
    const double beta = 0.55 * b0;
    const PQ s = sc.eval_PQ(lam, beta);
    const IvpResult l =
        integrate_ivp(nl, lam, sc.kernel().eval_G(beta), Side::left, 6000);
    if (!ivp_gap.add(s.P - (l.u_end + a * l.ux_end)))
      p.fail("P vs direct integration at lambda=" + fmt(lam));
    if (!ivp_gap.add(std::sqrt(lam) * s.Q - l.ux_end))
      p.fail("Q vs direct integration at lambda=" + fmt(lam));
  }

  // phase roots solve the branch function inside the expected bracket
  for (int k : {1, 2}) {
    const double beta = 0.5 * b0;
    const double phi = sc.solve_phi_k(k, beta);
    p.require(phi > (k - 1) * kPi && phi < (k - 0.5) * kPi,
              "phi_k outside its bracket at k=" + std::to_string(k));
    if (!branch_zero.add(sc.eval_g(beta, phi)))
      p.fail("branch function not zero at its root, k=" + std::to_string(k));
  }

  // analytic beta- and lambda-derivatives of (P, Q) against Richardson
  // finite differences
  const double lam = 3.0, beta = 0.44 * b0;
  {
    const PQBeta an = sc.eval_PQ_beta(lam, beta);
    auto fd = [&](double h) {
      const PQ hi = sc.eval_PQ(lam, beta + h), lo = sc.eval_PQ(lam, beta - h);
      return std::pair<double, double>((hi.P - lo.P) / (2 * h),
                                       (hi.Q - lo.Q) / (2 * h));
    };
    const auto d1 = fd(1e-4), d2 = fd(5e-5);
    const double pb = (4.0 * d2.first - d1.first) / 3.0;
    const double qb = (4.0 * d2.second - d1.second) / 3.0;
    if (!fd_gap.add((an.P_beta - pb) / std::max(1.0, std::fabs(pb))))
      p.fail("P_beta vs finite difference");
    if (!fd_gap.add((an.Q_beta - qb) / std::max(1.0, std::fabs(qb))))
      p.fail("Q_beta vs finite difference");
  }
  {
    const PQLambda an = sc.eval_PQ_lambda(lam, beta);
    auto fd = [&](double h) {
      const PQ hi = sc.eval_PQ(lam + h, beta), lo = sc.eval_PQ(lam - h, beta);
      return std::pair<double, double>((hi.P - lo.P) / (2 * h),
                                       (hi.Q - lo.Q) / (2 * h));
    };
    const auto d1 = fd(1e-4), d2 = fd(5e-5);
    const double pl = (4.0 * d2.first - d1.first) / 3.0;
    const double ql = (4.0 * d2.second - d1.second) / 3.0;
    if (!fd_gap.add((an.P_lambda - pl) / std::max(1.0, std::fabs(pl))))
      p.fail("P_lambda vs finite difference");
    if (!fd_gap.add((an.Q_lambda - ql) / std::max(1.0, std::fabs(ql))))
      p.fail("Q_lambda vs finite difference");
  }

  // the trivial-pair determinant flips sign across the first bifurcation
  const double fp0 = nl.f_prime_0();
  const double lambda_1 = std::pow(z_root(a, 1), 2) / fp0;
  const double d_lo = sc.eval_D(lambda_1 * 0.98, 0.0, 0.0);
  const double d_hi = sc.eval_D(lambda_1 * 1.02, 0.0, 0.0);
  p.require(d_lo * d_hi < 0.0,
            "D(lambda, 0, 0) does not change sign across the first "
            "bifurcation value");
  if (p.ok)
    p.note = ivp_gap.summary("P,Q vs direct integration") + "; " +
             fd_gap.summary("derivatives vs finite differences");
}

void props_oracle(Probe& p, const ShootingContext& sc) {
  const Nonlinearity& nl = sc.kernel().nonlinearity();
  const double b0 = sc.beta0();
  const IvpResult r =
      integrate_ivp(nl, 5.0, sc.kernel().eval_G(0.6 * b0), Side::left, 4000);
  p.require(std::fabs(r.energy_drift) < 1e-10,
            "energy drift " + fmt(r.energy_drift) + " across the sweep");

  const double root = root_oracle([](double x) { return std::cos(x); },
                                  1.0, 2.0);
  p.require(std::fabs(root - kPi / 2.0) < 1e-13,
            "reference bisection missed the cosine root by " +
                fmt(root - kPi / 2.0));

  // an endpoint blow-up evaluated through representable abscissae: nodes
  // closer to the endpoint than one spacing of doubles are clamped, which
  // caps the attainable accuracy near sqrt(eps) for an inverse square root
  const double ts = tanh_sinh(
      [](double x) { return 1.0 / std::sqrt(1.0 - x); }, 0.0, 1.0);
  p.require(std::fabs(ts - 2.0) < 1e-7,
            "double-exponential quadrature off by " + fmt(ts - 2.0) +
                " on an endpoint-singular integral");

  const std::vector<double> seq = {1.0, -1.0, 0.0, 2.0, -3.0};
  p.require(count_sign_changes(seq) == 3, "sign-change counter misbehaves");

  // dense agreement of the closed-form profile with the time stepper
  const double beta = 0.62 * b0;
  const double lam = sc.lambda_branch(1, Parity::odd, beta);
  const SolutionProfile prof = reconstruct_solution(sc, lam, beta, -beta, 65);
  const IvpResult ivp =
      integrate_ivp(nl, lam, sc.kernel().eval_G(beta), Side::left, 6400);
  Bound dense(1e-9);
  for (size_t i = 0; i < prof.x.size() && p.ok; ++i) {
    if (prof.x[i] >= 0.0) break;
    const double t = (prof.x[i] + 1.0);
    const size_t j = static_cast<size_t>(
        std::llround(t * static_cast<double>(ivp.xs.size() - 1)));
    if (!dense.add(prof.u[i] - ivp.us[j]))
      p.fail("closed-form profile drifts from the stepper at x=" +
             fmt(prof.x[i]));
  }
  if (p.ok)
    p.note = "energy drift " + fmt(r.energy_drift) + "; " +
             dense.summary("profile vs stepper");
}

void props_branches(Probe& p, const ShootingContext& sc) {
  const double b0 = sc.beta0();

  // amplitude grids: size, monotonicity, rim distance, cap retargeting
  BetaGrid g;
  g.n = 40;
  g.rim_gap = 1e-5;
  const auto grid = make_beta_grid(b0, g);
  p.require(static_cast<int>(grid.size()) == g.n, "grid size mismatch");
  for (size_t i = 1; i < grid.size(); ++i)
    p.require(grid[i] > grid[i - 1], "grid not increasing");
  p.require(std::fabs(grid.back() - b0 * (1.0 - g.rim_gap)) < 1e-15 * b0,
            "grid does not end at the rim gap");
  g.beta_max = 0.5 * b0;
  const auto capped = make_beta_grid(b0, g);
  p.require(static_cast<int>(capped.size()) == g.n &&
                std::fabs(capped.back() - g.beta_max) < 1e-15 * b0,
            "capped grid does not end at the cap");

  // zero structure of reconstructed profiles: 2k-2 interior zeros and an
  // interface sign flip on odd branches, 2k interior zeros and no flip on
  // even branches
  struct Case {
    int k;
    Parity par;
  };
  for (const Case c : {Case{1, Parity::odd}, Case{1, Parity::even},
                       Case{2, Parity::odd}, Case{2, Parity::even}}) {
    const double beta = 0.55 * b0;
    const double lam = sc.lambda_branch(c.k, c.par, beta);
    const double beta2 = c.par == Parity::odd ? -beta : beta;
    const SolutionProfile prof =
        reconstruct_solution(sc, lam, beta, beta2, 801);
    std::vector<double> left, right;
    for (size_t i = 0; i < prof.x.size(); ++i)
      (prof.x[i] < 0.0 ? left : right).push_back(prof.u[i]);
    left.push_back(prof.u_left);
    right.insert(right.begin(), prof.u_right);
    const int zeros = sign_changes_of(left) + sign_changes_of(right);
    const int expect = c.par == Parity::odd ? 2 * c.k - 2 : 2 * c.k;
    p.require(zeros == expect,
              "profile zero count " + std::to_string(zeros) + " != " +
                  std::to_string(expect) + " at k=" + std::to_string(c.k) +
                  (c.par == Parity::odd ? " odd" : " even"));
    const double prod = prof.u_left * prof.u_right;
    p.require(c.par == Parity::odd ? prod < 0.0 : prod > 0.0,
              "interface sign pattern wrong at k=" + std::to_string(c.k) +
                  (c.par == Parity::odd ? " odd" : " even"));
    p.require(prof.ux.front() == 0.0 && prof.ux.back() == 0.0,
              "outer slopes not zero");
    if (!p.ok) return;
  }

  // branch start continuity: lambda at vanishing amplitude approaches the
  // bifurcation value
  const double fp0 = sc.kernel().nonlinearity().f_prime_0();
  const double lambda_1 = std::pow(z_root(sc.coupling(), 1), 2) / fp0;
  const double lam0 = sc.lambda_branch(1, Parity::odd, 1e-8);
  p.require(std::fabs(lam0 - lambda_1) < 1e-6 * std::max(1.0, lambda_1),
            "odd branch does not start at the bifurcation value (gap " +
                fmt(lam0 - lambda_1) + ")");
  if (p.ok)
    p.note = "grids, zero counts, interface signs, outer slopes, and branch "
             "start all consistent";
}

void props_spectrum(Probe& p, const ShootingContext& sc) {
  const double fp0 = sc.kernel().nonlinearity().f_prime_0();
  const double lam = 2.0 / fp0;
  const auto exact = trivial_eigenvalues(sc, lam, 4);
  const SpectrumResult s = compute_spectrum(sc, lam, 0.0, 0.0, 200, 4);
  Bound gap(1e-5 * std::max(1.0, std::fabs(exact[0])));
  for (int i = 0; i < 4; ++i)
    if (!gap.add(s.eigenvalues[i] - exact[i]))
      p.fail("trivial-state eigenvalue " + std::to_string(i) +
             " misses its closed form by " +
             fmt(s.eigenvalues[i] - exact[i]));

  // the index is grid-independent once the grid resolves the modes
  const double beta = sc.lambda_to_beta(1, Parity::odd, 5.0 / fp0);
  const SpectrumResult c300 =
      compute_spectrum(sc, 5.0 / fp0, beta, -beta, 300, 4);
  const SpectrumResult c500 =
      compute_spectrum(sc, 5.0 / fp0, beta, -beta, 500, 4);
  p.require(c300.morse_index == c500.morse_index,
            "index changes with the grid (" +
                std::to_string(c300.morse_index) + " vs " +
                std::to_string(c500.morse_index) + ")");
  p.require(!c300.degenerate && !c500.degenerate,
            "spurious degeneracy flag away from a bifurcation point");
  if (p.ok)
    p.note = gap.summary("trivial spectrum gap") + "; index stable at " +
             std::to_string(c500.morse_index);
}

void props_config_io(Probe& p) {
  const char* text =
      "# sample\n"
      "[problem]\n"
      "nonlinearity = \"custom\"\n"
      "coefficients = [2.0, -2.0]\n"
      "a = 0.75\n"
      "kmax = 3\n"
      "lambda_max = 9.5\n"
      "[output]\n"
      "dir = \"runs/out\"\n"
      "json = true\n";
  const Config cfg = parse_config_text(text, "sample");
  validate_config(cfg);
  p.require(cfg.nonlinearity == "custom" && cfg.coefficients.size() == 2 &&
                cfg.coefficients[1] == -2.0 && cfg.a == 0.75 &&
                cfg.k_max == 3 && cfg.lambda_max == 9.5 &&
                cfg.out_dir == "runs/out" && cfg.json,
            "parsed values do not round trip");

  auto rejects = [&p](const char* bad, const char* why) {
    try {
      Config c = parse_config_text(bad, "bad");
      validate_config(c);
      p.fail(std::string("config accepted though ") + why);
    } catch (const ConfigError&) {
    }
  };
  rejects("[problem]\na = 0\n", "a = 0");
  rejects("[problem]\na = -1\n", "a < 0");
  rejects("[problem]\nnonlinearity = quartic\n", "the kind is unknown");
  rejects("[problem]\nkmax = 0\n", "kmax = 0");
  rejects("[problem]\na = 1\na = 2\n", "a key repeats");
  rejects("[mystery]\nx = 1\n", "the section is unknown");
  rejects("[problem]\nwibble = 1\n", "the key is unknown");
  rejects("[problem]\nnonlinearity = custom\n", "coefficients are missing");
  rejects("[grids]\nspectrum_grid = 4\n", "the spectrum grid is too coarse");

  // line numbers surface in messages
  try {
    parse_config_text("[problem]\n\na = oops\n", "lines");
    p.fail("non-numeric value accepted");
  } catch (const ConfigError& e) {
    p.require(std::string(e.what()).find("lines:3") != std::string::npos,
              std::string("error does not cite its line: ") + e.what());
  }
  if (p.ok) p.note = "round trip plus 9 rejection paths, messages cite lines";
}

// Criteria 1-5 bundled for the sine re-run.
void crit_sine_rerun(Probe& p, const ShootingContext& sc, bool quick) {
  struct Sub {
    const char* name;
    std::function<void(Probe&)> fn;
  };
  const std::vector<Sub> subs = {
      {"primary-values", [&](Probe& q) { crit_primary_values(q, sc); }},
      {"branch-residuals",
       [&](Probe& q) { crit_branch_residuals(q, sc, quick); }},
      {"monotonicity",
       [&](Probe& q) { crit_branch_monotonicity(q, sc, quick); }},
      {"secondary-roots",
       [&](Probe& q) { crit_secondary_roots(q, sc, quick); }},
      {"morse-switch", [&](Probe& q) { crit_morse_switch(q, sc, quick); }},
  };
  std::string note;
  for (const Sub& sub : subs) {
    Probe q;
    try {
      sub.fn(q);
    } catch (const std::exception& e) {
      q.ok = false;
      q.msg = std::string("exception: ") + e.what();
    }
    if (!q.ok) {
      p.fail(std::string(sub.name) + " with sine nonlinearity: " + q.msg);
      return;
    }
    if (!note.empty()) note += "; ";
    note += std::string(sub.name) + " ok";
  }
  p.note = note;
}

}  // namespace

std::vector<CheckResult> run_verification(const Config& cfg,
                                          const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  Runner run{out, opts.log};
  const bool quick = opts.quick;

  const Nonlinearity nl = config_nonlinearity(cfg);
  const ShootingContext sc(nl, cfg.a, config_quad_tols(cfg));

  if (!opts.acceptance_only) {
    run("conditions." + nl.name(),
        [&](Probe& p) { props_shape_conditions(p, nl); });
    run("properties.nonlinearity",
        [&](Probe& p) { props_nonlinearity(p, sc); });
    run("properties.quadrature", [&](Probe& p) { props_quadrature(p, sc); });
    run("properties.shooting", [&](Probe& p) { props_shooting(p, sc); });
    run("properties.oracle", [&](Probe& p) { props_oracle(p, sc); });
    run("properties.branches", [&](Probe& p) { props_branches(p, sc); });
    run("properties.spectrum", [&](Probe& p) { props_spectrum(p, sc); });
    run("properties.config-io", [&](Probe& p) { props_config_io(p); });
  }

  // The numbered acceptance checks measure fixed problems: the cubic
  // nonlinearity with unit coupling, then the sine re-run of checks 1-5.
  const ShootingContext scc(Nonlinearity::cubic(), 1.0);
  run("acceptance.01-primary-bifurcation-values",
      [&](Probe& p) { crit_primary_values(p, scc); });
  run("acceptance.02-branch-solution-residuals",
      [&](Probe& p) { crit_branch_residuals(p, scc, quick); });
  run("acceptance.03-branch-monotonicity",
      [&](Probe& p) { crit_branch_monotonicity(p, scc, quick); });
  run("acceptance.04-secondary-root-uniqueness",
      [&](Probe& p) { crit_secondary_roots(p, scc, quick); });
  run("acceptance.05-morse-index-switch",
      [&](Probe& p) { crit_morse_switch(p, scc, quick); });
  run("acceptance.06-trivial-spectrum-convergence",
      [&](Probe& p) { crit_trivial_spectrum(p, scc, quick); });
  run("acceptance.07-spectrum-cross-method",
      [&](Probe& p) { crit_cross_method(p, scc, quick); });
  run("acceptance.08-sign-properties",
      [&](Probe& p) { crit_sign_properties(p, scc, quick); });
  run("acceptance.09-secondary-branch-continuation",
      [&](Probe& p) { crit_secondary_branch(p, scc, quick); });
  run("acceptance.10-symmetry-exactness",
      [&](Probe& p) { crit_symmetry_exactness(p, scc, quick); });
  run("acceptance.11-solution-set-completeness",
      [&](Probe& p) { crit_completeness(p, scc, quick); });
  const ShootingContext scs(Nonlinearity::sine(), 1.0);
  run("acceptance.12-sine-rerun",
      [&](Probe& p) { crit_sine_rerun(p, scs, quick); });
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.passed) return false;
  return true;
}

void write_verify_json(const std::vector<CheckResult>& results,
                       const std::string& path) {
  auto esc = [](const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out += buf;
          } else {
            out += c;
          }
      }
    }
    return out;
  };
  std::ostringstream os;
  os << "{\n  \"passed\": " << (all_passed(results) ? "true" : "false")
     << ",\n  \"checks\": [\n";
  for (size_t i = 0; i < results.size(); ++i) {
    const CheckResult& r = results[i];
    char sec[32];
    std::snprintf(sec, sizeof sec, "%.3f", r.seconds);
    os << "    {\"id\": \"" << esc(r.id) << "\", \"passed\": "
       << (r.passed ? "true" : "false") << ", \"seconds\": " << sec
       << ", \"detail\": \"" << esc(r.detail) << "\"}"
       << (i + 1 < results.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("verify report: cannot open '" + path + "'");
  out << os.str();
}

}  // namespace bifurcata
