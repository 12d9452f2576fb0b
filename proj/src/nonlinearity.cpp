#include "bifurcata/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bifurcata/errors.hpp"
#include "bifurcata/roots.hpp"

namespace bifurcata {

namespace {

constexpr double kPi = std::numbers::pi;

// Horner evaluation of p(t) = sum_j c_j t^j and its first two t-derivatives.
double horner(const std::vector<double>& c, double t) {
  double p = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) p = p * t + c[j];
  return p;
}

double horner_d1(const std::vector<double>& c, double t) {
  double p = 0.0;
  for (std::size_t j = c.size(); j-- > 1;) p = p * t + static_cast<double>(j) * c[j];
  return p;
}

double horner_d2(const std::vector<double>& c, double t) {
  double p = 0.0;
  for (std::size_t j = c.size(); j-- > 2;)
    p = p * t + static_cast<double>(j) * static_cast<double>(j - 1) * c[j];
  return p;
}

}  // namespace

double Nonlinearity::f(double u) const {
  switch (kind_) {
    case NonlinearityKind::cubic:
      return u * (1.0 - u) * (1.0 + u);
    case NonlinearityKind::sine:
      return std::sin(kPi * u);
    case NonlinearityKind::custom:
      return u * horner(coeffs_, u * u);
  }
  return 0.0;
}

double Nonlinearity::df(double u) const {
  switch (kind_) {
    case NonlinearityKind::cubic:
      return 1.0 - 3.0 * u * u;
    case NonlinearityKind::sine:
      return kPi * std::cos(kPi * u);
    case NonlinearityKind::custom: {
      double t = u * u;
      return horner(coeffs_, t) + 2.0 * t * horner_d1(coeffs_, t);
    }
  }
  return 0.0;
}

double Nonlinearity::d2f(double u) const {
  switch (kind_) {
    case NonlinearityKind::cubic:
      return -6.0 * u;
    case NonlinearityKind::sine:
      return -kPi * kPi * std::sin(kPi * u);
    case NonlinearityKind::custom: {
      double t = u * u;
      return u * (6.0 * horner_d1(coeffs_, t) + 4.0 * t * horner_d2(coeffs_, t));
    }
  }
  return 0.0;
}

double Nonlinearity::F(double u) const {
  switch (kind_) {
    case NonlinearityKind::cubic:
      return u * u * (1.0 - 0.5 * u * u);
    case NonlinearityKind::sine: {
      double s = std::sin(0.5 * kPi * u);
      return (4.0 / kPi) * s * s;
    }
    case NonlinearityKind::custom: {
      double t = u * u;
      double q = 0.0;
      for (std::size_t j = coeffs_.size(); j-- > 0;)
        q = q * t + coeffs_[j] / static_cast<double>(j + 1);
      return t * q;
    }
  }
  return 0.0;
}

void Nonlinearity::finalize() {
  switch (kind_) {
    case NonlinearityKind::cubic:
      fp0_ = 1.0;
      f3_0_ = -6.0;
      u0_ = std::sqrt(1.0 / 3.0);
      beta0_ = std::sqrt(0.5);
      name_ = "cubic";
      return;
    case NonlinearityKind::sine:
      fp0_ = kPi;
      f3_0_ = -kPi * kPi * kPi;
      u0_ = 0.5;
      beta0_ = 2.0 / std::sqrt(kPi);
      name_ = "sine";
      return;
    case NonlinearityKind::custom:
      break;
  }
  name_ = "custom";
  if (coeffs_.empty() || coeffs_[0] <= 0.0)
    throw DomainError("custom nonlinearity: need a positive leading coefficient");
  double scale = 0.0;
  for (double c : coeffs_) scale += std::abs(c);
  if (std::abs(f(1.0)) > 1e-12 * scale)
    throw DomainError("custom nonlinearity: f(1) must vanish");
  if (df(1.0) >= 0.0)
    throw DomainError("custom nonlinearity: f'(1) must be negative");
  // positivity between the zeros and a single sign change of f'
  const int n = 2001;
  int sign_changes = 0;
  double prev_df = df(0.0);
  double bracket_lo = 0.0, bracket_hi = 1.0;
  for (int i = 0; i < n; ++i) {
    double u = (i + 0.5) / n;
    if (f(u) <= 0.0)
      throw DomainError("custom nonlinearity: f must be positive on (0, 1)");
    double d = df(u);
    if ((d > 0.0) != (prev_df > 0.0)) {
      ++sign_changes;
      bracket_lo = (i > 0) ? (i - 0.5) / n : 0.0;
      bracket_hi = u;
    }
    prev_df = d;
  }
  if (sign_changes != 1)
    throw DomainError("custom nonlinearity: f' must change sign exactly once on (0, 1)");
  fp0_ = coeffs_[0];
  f3_0_ = coeffs_.size() > 1 ? 6.0 * coeffs_[1] : 0.0;
  auto dfu = [this](double u) { return df(u); };
  RootResult r = bisect(dfu, bracket_lo, bracket_hi, 1e-14);
  u0_ = newton_safeguarded(dfu, [this](double u) { return d2f(u); }, r.x,
                           bracket_lo, bracket_hi, 0.0, 1e-15, 4)
            .x;
  beta0_ = std::sqrt(F(1.0));
}

Nonlinearity Nonlinearity::cubic() {
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::cubic;
  nl.finalize();
  return nl;
}

Nonlinearity Nonlinearity::sine() {
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::sine;
  nl.finalize();
  return nl;
}

Nonlinearity Nonlinearity::custom(std::vector<double> odd_coefficients) {
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::custom;
  nl.coeffs_ = std::move(odd_coefficients);
  nl.finalize();
  return nl;
}

Nonlinearity make_nonlinearity(const std::string& kind,
                               const std::vector<double>& coefficients) {
  if (kind == "cubic") return Nonlinearity::cubic();
  if (kind == "sine") return Nonlinearity::sine();
  if (kind == "custom") return Nonlinearity::custom(coefficients);
  throw DomainError("unknown nonlinearity kind: " + kind);
}

ConditionReport check_conditions(const Nonlinearity& nl, int n_samples) {
  if (n_samples < 100)
    throw DomainError("check_conditions: need at least 100 samples");
  ConditionReport rep;
  rep.n_samples = n_samples;
  const double u0 = nl.u_peak();

  // shape: slopes at the zeros, positivity between them, oddness
  double m_shape = std::min(nl.f_prime_0(), -nl.df(1.0));
  bool odd_ok = true;
  for (int i = 0; i < n_samples; ++i) {
    double u = (i + 0.5) / n_samples;
    m_shape = std::min(m_shape, nl.f(u));
    if (std::abs(nl.f(u) + nl.f(-u)) > 1e-13 * std::max(1.0, std::abs(nl.f(u))))
      odd_ok = false;
  }
  rep.margin_shape = m_shape;
  rep.shape_ok = odd_ok && m_shape > 0.0;

  // f' positive left of the peak, negative right of it
  double m_peak = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_samples; ++i) {
    double u = (i + 0.5) / n_samples;
    double d = nl.df(u);
    m_peak = std::min(m_peak, (u < u0) ? d : -d);
  }
  rep.margin_peak = m_peak;
  rep.single_peak = m_peak > 0.0;

  // curvature ratio f'F/f^2 strictly decreasing on (0, u0)
  double m_h = std::numeric_limits<double>::infinity();
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < n_samples; ++i) {
    double u = u0 * (i + 0.5) / n_samples;
    double fu = nl.f(u);
    double r = nl.df(u) * nl.F(u) / (fu * fu);
    if (i > 0) m_h = std::min(m_h, prev - r);
    prev = r;
  }
  rep.margin_h = m_h;
  rep.h_decreasing = m_h > 0.0;

  // f'F^{3/2}/f^3 nonincreasing on (u0, 1)
  double m_tail = std::numeric_limits<double>::infinity();
  prev = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < n_samples; ++i) {
    double u = u0 + (1.0 - u0) * (i + 0.5) / (n_samples + 1);
    double fu = nl.f(u);
    double Fu = nl.F(u);
    double s = nl.df(u) * Fu * std::sqrt(Fu) / (fu * fu * fu);
    if (i > 0) m_tail = std::min(m_tail, prev - s);
    prev = s;
  }
  rep.margin_tail = m_tail;
  rep.tail_nonincreasing = m_tail >= -1e-12;

  // f'(u) u / f(u) < 1 on (0, 1)
  double m_slope = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_samples; ++i) {
    double u = (i + 0.5) / n_samples;
    m_slope = std::min(m_slope, 1.0 - nl.df(u) * u / nl.f(u));
  }
  rep.margin_slope_ratio = m_slope;
  rep.slope_ratio_below_one = m_slope > 0.0;
  return rep;
}

GKernel::GKernel(Nonlinearity nl) : nl_(std::move(nl)) {
  v0_ = std::sqrt(nl_.F(nl_.u_peak()));
  v_switch_ = 1e-4 * nl_.beta0();
  const double fp0 = nl_.f_prime_0();
  taylor_c_ = -nl_.d3f_0() / (24.0 * fp0 * fp0);
  gp0_ = 1.0 / std::sqrt(fp0);
}

double GKernel::invert_F(double target) const {
  // solve F(u) = target on (0, 1); F is strictly increasing there
  auto fn = [&](double u) { return nl_.F(u) - target; };
  RootResult r = bisect(fn, 0.0, 1.0, 1e-14);
  double u = r.x;
  for (int i = 0; i < 2; ++i) {
    double deriv = 2.0 * nl_.f(u);
    if (deriv == 0.0) break;
    double step = -(nl_.F(u) - target) / deriv;
    double un = u + step;
    if (un > 0.0 && un < 1.0) u = un;
  }
  return u;
}

double GKernel::eval_G(double v) const {
  const double b0 = nl_.beta0();
  if (!(std::abs(v) < b0))
    throw DomainError("eval_G: |v| must be below sqrt(F(1))");
  switch (nl_.kind()) {
    case NonlinearityKind::cubic: {
      // F(u) = v^2 gives u^2 = 1 - sqrt(1 - 2 v^2) = 2 v^2 / (1 + sqrt(1 - 2 v^2))
      double t = std::sqrt(std::max(0.0, 1.0 - 2.0 * v * v));
      return v * std::sqrt(2.0 / (1.0 + t));
    }
    case NonlinearityKind::sine:
      // (4/pi) sin^2(pi u / 2) = v^2
      return (2.0 / kPi) * std::asin(0.5 * std::sqrt(kPi) * v);
    case NonlinearityKind::custom: {
      if (v == 0.0) return 0.0;
      double u = invert_F(v * v);
      return std::copysign(u, v);
    }
  }
  return 0.0;
}

GDerivs GKernel::eval_G_derivs(double v) const {
  double u = eval_G(v);
  if (std::abs(v) < v_switch_) {
    double g1 = gp0_ * (1.0 + 3.0 * taylor_c_ * v * v);
    double g2 = 6.0 * taylor_c_ * gp0_ * v;
    return {u, g1, g2};
  }
  double fu = nl_.f(u);
  double g1 = v / fu;
  double g2 = (1.0 - nl_.df(u) * v * v / (fu * fu)) / fu;
  return {u, g1, g2};
}

CurvaturePair GKernel::eval_h_H(double v) const {
  if (std::abs(v) < v_switch_) {
    double v2 = v * v;
    return {1.0 - 6.0 * taylor_c_ * v2, 2.0 * taylor_c_ * v2 * v2};
  }
  GDerivs d = eval_G_derivs(v);
  return {1.0 - d.G2 * v / d.G1, v * v - d.G * v / d.G1};
}

}  // namespace bifurcata
