#include "bifurcata/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bifurcata/errors.hpp"

namespace bifurcata {

namespace {

constexpr double kPi = std::numbers::pi;

struct State {
  double u, v;  // v = du/dx along the integration direction
};

State rk4_step(const Nonlinearity& nl, double lambda, State s, double h) {
  auto acc = [&](double u) { return -lambda * nl.f(u); };
  const double k1u = s.v, k1v = acc(s.u);
  const double k2u = s.v + 0.5 * h * k1v, k2v = acc(s.u + 0.5 * h * k1u);
  const double k3u = s.v + 0.5 * h * k2v, k3v = acc(s.u + 0.5 * h * k2u);
  const double k4u = s.v + h * k3v, k4v = acc(s.u + h * k3u);
  return {s.u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
          s.v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
}

}  // namespace

IvpResult integrate_ivp(const Nonlinearity& nl, double lambda, double alpha,
                        Side side, int n_steps, double drift_tol) {
  if (n_steps < 1) throw DomainError("integrate_ivp: n_steps must be positive");
  if (!(lambda >= 0.0)) throw DomainError("integrate_ivp: lambda must be nonnegative");
  // integration variable s runs over [0, 1] from the outer boundary inward;
  // left: x = s - 1, right: x = 1 - s (so du/dx = -du/ds on the right)
  const double h = 1.0 / n_steps;
  State st{alpha, 0.0};
  const double e0 = lambda * nl.F(alpha);
  const double e_scale = std::max(1.0, std::abs(e0));
  double drift = 0.0;
  IvpResult out;
  out.xs.reserve(n_steps + 1);
  out.us.reserve(n_steps + 1);
  out.uxs.reserve(n_steps + 1);
  auto store = [&](double s, const State& cur) {
    const double x = (side == Side::left) ? s - 1.0 : 1.0 - s;
    const double ux = (side == Side::left) ? cur.v : -cur.v;
    out.xs.push_back(x);
    out.us.push_back(cur.u);
    out.uxs.push_back(ux);
    const double e = cur.v * cur.v + lambda * nl.F(cur.u);
    drift = std::max(drift, std::abs(e - e0) / e_scale);
  };
  store(0.0, st);
  for (int i = 0; i < n_steps; ++i) {
    st = rk4_step(nl, lambda, st, h);
    store((i + 1) * h, st);
  }
  out.u_end = st.u;
  out.ux_end = (side == Side::left) ? st.v : -st.v;
  out.energy_drift = drift;
  if (drift > drift_tol)
    throw EnergyDrift("integrate_ivp: energy drift above tolerance");
  return out;
}

std::pair<double, double> matching_residual(const Nonlinearity& nl, double a,
                                            double lambda, double beta1,
                                            double beta2, int n_steps) {
  GKernel gk(nl);
  IvpResult l = integrate_ivp(nl, lambda, gk.eval_G(beta1), Side::left, n_steps);
  IvpResult r = integrate_ivp(nl, lambda, gk.eval_G(beta2), Side::right, n_steps);
  return {(l.u_end + a * l.ux_end) - (r.u_end - a * r.ux_end),
          l.ux_end - r.ux_end};
}

SolutionScan scan_solution_set(const Nonlinearity& nl, double a, double lambda,
                               int n, int n_steps) {
  if (n < 2) throw DomainError("scan_solution_set: need at least 2 cells per side");
  GKernel gk(nl);
  const double edge = nl.beta0() * (1.0 - 1e-6);
  SolutionScan scan;
  scan.beta.resize(n + 1);
  std::vector<double> p(n + 1), q(n + 1);  // u(-0) + a u_x(-0) and u_x(-0)
  for (int i = 0; i <= n; ++i) {
    const double beta = -edge + 2.0 * edge * i / n;
    scan.beta[i] = beta;
    IvpResult l =
        integrate_ivp(nl, lambda, gk.eval_G(beta), Side::left, n_steps);
    p[i] = l.u_end + a * l.ux_end;
    q[i] = l.ux_end;
  }
  // right half mirrors the left: u(+0) = u_end, u_x(+0) = -u_x_end, so
  // u(+0) - a u_x(+0) = p and u_x(+0) = -q at the same beta.
  auto changes = [](double c00, double c01, double c10, double c11) {
    const double mx = std::max({c00, c01, c10, c11});
    const double mn = std::min({c00, c01, c10, c11});
    return mn <= 0.0 && mx >= 0.0;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double m1_00 = p[i] - p[j], m1_01 = p[i] - p[j + 1];
      const double m1_10 = p[i + 1] - p[j], m1_11 = p[i + 1] - p[j + 1];
      const double m2_00 = q[i] + q[j], m2_01 = q[i] + q[j + 1];
      const double m2_10 = q[i + 1] + q[j], m2_11 = q[i + 1] + q[j + 1];
      if (changes(m1_00, m1_01, m1_10, m1_11) &&
          changes(m2_00, m2_01, m2_10, m2_11))
        scan.cells.emplace_back(i, j);
    }
  }
  return scan;
}

double root_oracle(const std::function<double(double)>& fn, double lo,
                   double hi) {
  if (!(lo < hi)) throw BracketError("root_oracle: empty bracket");
  double flo = fn(lo);
  if (flo == 0.0) return lo;
  double fhi = fn(hi);
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw BracketError("root_oracle: no sign change on bracket");
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return 0.5 * (lo + hi);
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, int max_level) {
  if (!(b > a)) return 0.0;
  const double r = 0.5 * (b - a);
  // node at t: x = c + r tanh(pi/2 sinh t); evaluate via the distance to the
  // nearer endpoint so integrable endpoint blow-ups see accurate abscissae
  auto eval_node = [&](double t, double weight_h) {
    const double s = 0.5 * kPi * std::sinh(t);
    const double ch = std::cosh(s);
    const double w = weight_h * 0.5 * kPi * std::cosh(t) / (ch * ch);
    if (!(w > 1e-300)) return 0.0;
    const double delta = r / (std::exp(2.0 * std::abs(s)) * 0.5 + 0.5);
    if (delta <= 0.0) return 0.0;
    // keep the abscissa strictly inside even when delta drops below the
    // spacing of doubles near the endpoint, so integrable blow-ups stay
    // finite at every node
    double x = (t >= 0.0) ? b - delta : a + delta;
    if (t >= 0.0 && !(x < b)) x = std::nextafter(b, a);
    if (t < 0.0 && !(x > a)) x = std::nextafter(a, b);
    return w * r * f(x);
  };
  const double t_max = 6.1;  // weights underflow beyond this
  double h = 1.0;
  double sum = eval_node(0.0, h);
  for (double t = h; t <= t_max; t += h) {
    sum += eval_node(t, h);
    sum += eval_node(-t, h);
  }
  double prev = sum;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (double t = h; t <= t_max; t += 2.0 * h) {
      add += eval_node(t, h);
      add += eval_node(-t, h);
    }
    const double cur = 0.5 * prev + add;
    if (level >= 3 &&
        std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-300))
      return cur;
    prev = cur;
  }
  return prev;
}

double oracle_phase_integral(const GKernel& gk, double beta, double phi,
                             int which, double rel_tol) {
  if (phi == 0.0) return 0.0;
  if (phi < 0.0) return -oracle_phase_integral(gk, beta, -phi, which, rel_tol);
  auto f = [&](double tau) {
    const GDerivs d = gk.eval_G_derivs(beta * std::cos(tau));
    return which == 0 ? d.G1 : d.G2 * std::cos(tau);
  };
  double total = 0.0;
  double lo = 0.0;
  for (long m = 0; lo < phi; ++m) {
    const double hi = std::min(phi, (static_cast<double>(m) + 1.0) * kPi);
    if (hi > lo) total += tanh_sinh(f, lo, hi, rel_tol);
    lo = hi;
  }
  return total;
}

int count_sign_changes(const std::vector<double>& values) {
  int count = 0;
  double prev = 0.0;
  bool have_prev = false;
  for (double v : values) {
    if (v == 0.0) continue;
    if (have_prev && (v > 0.0) != (prev > 0.0)) ++count;
    prev = v;
    have_prev = true;
  }
  return count;
}

}  // namespace bifurcata
