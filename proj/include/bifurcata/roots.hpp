#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "bifurcata/errors.hpp"

namespace bifurcata {

// One-dimensional scalar root finding.  Everything here is deterministic:
// plain bisection for robustness, optional Newton polish for the last digits.

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

// Bisect f on [lo, hi] until the bracket width falls below xtol.
// Requires a sign change (f(lo)*f(hi) <= 0); an exact zero at an endpoint
// is returned as-is.
template <class F>
RootResult bisect(F&& f, double lo, double hi, double xtol,
                  int max_iter = 200) {
  if (!(lo < hi)) throw BracketError("bisect: empty bracket");
  double flo = f(lo);
  if (flo == 0.0) return {lo, 0.0, 0};
  double fhi = f(hi);
  if (fhi == 0.0) return {hi, 0.0, 0};
  if ((flo > 0.0) == (fhi > 0.0))
    throw BracketError("bisect: no sign change on bracket");
  int it = 0;
  double mid = lo, fmid = flo;
  while (hi - lo > xtol && it < max_iter) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at rounding resolution
    fmid = f(mid);
    ++it;
    if (fmid == 0.0) return {mid, 0.0, it};
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }
  mid = 0.5 * (lo + hi);
  return {mid, f(mid), it};
}

// Newton iteration confined to [lo, hi]; any step leaving the interval is
// replaced by a bisection step against the tracked sign-change bracket.
// Stops when |f| <= ftol or the step shrinks below xtol.
template <class F, class DF>
RootResult newton_safeguarded(F&& f, DF&& df, double x0, double lo, double hi,
                              double ftol, double xtol, int max_iter = 60) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  if ((flo > 0.0) == (fhi > 0.0))
    throw BracketError("newton_safeguarded: no sign change on bracket");
  double x = x0, fx = f(x);
  double step_old = hi - lo;
  for (int it = 1; it <= max_iter; ++it) {
    if (std::abs(fx) <= ftol) return {x, fx, it};
    // keep the bracket current
    if ((fx > 0.0) == (flo > 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    const double d = df(x);
    double xn;
    // A tangent step is accepted only while it stays inside the bracket and
    // the correction keeps at least halving; otherwise bisect.  The second
    // clause matters when the root sits on a gradient spike: the tangent
    // taken a little off the root then overshoots persistently, and pure
    // Newton closes in only harmonically.
    if (d != 0.0 && std::abs(2.0 * fx) <= std::abs(step_old) * std::abs(d)) {
      xn = x - fx / d;
      if (!(xn > lo) || !(xn < hi)) xn = 0.5 * (lo + hi);
    } else {
      xn = 0.5 * (lo + hi);
    }
    step_old = xn - x;
    if (std::abs(xn - x) <= xtol) return {xn, f(xn), it};
    x = xn;
    fx = f(x);
  }
  // A bracket narrowed to rounding resolution pins the root to full double
  // precision even when a noise floor in f keeps the residual above ftol.
  const double collapsed = 4.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(lo), std::abs(hi));
  if (std::abs(fx) > ftol && hi - lo > collapsed)
    throw ToleranceNotMet("newton_safeguarded: residual above tolerance");
  return {x, fx, max_iter};
}

// Expand [lo, hi] geometrically to the right until f changes sign.
template <class F>
std::pair<double, double> expand_bracket_right(F&& f, double lo, double hi,
                                               double limit,
                                               int max_expand = 60) {
  double flo = f(lo);
  double fhi = f(hi);
  double width = hi - lo;
  for (int i = 0; i < max_expand; ++i) {
    if ((flo > 0.0) != (fhi > 0.0) || flo == 0.0 || fhi == 0.0)
      return {lo, hi};
    lo = hi;
    flo = fhi;
    width *= 2.0;
    hi = std::min(limit, lo + width);
    if (!(hi > lo)) break;
    fhi = f(hi);
  }
  throw NoSignChange("expand_bracket_right: no sign change up to limit");
}

}  // namespace bifurcata
