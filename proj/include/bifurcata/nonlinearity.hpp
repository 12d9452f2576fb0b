#pragma once

#include <string>
#include <vector>

namespace bifurcata {

enum class NonlinearityKind { cubic, sine, custom };

// Odd C^2 nonlinearity f on [-1, 1] with f(0) = f(1) = 0, f > 0 on (0, 1),
// f'(0) > 0 and f'(1) < 0.  F is the potential F(u) = 2 * int_0^u f(s) ds.
// Built-in kinds use closed forms; custom kinds are odd polynomials
// f(u) = sum_j c_j u^(2j+1) validated against the same shape requirements.
class Nonlinearity {
 public:
  static Nonlinearity cubic();                      // f(u) = u - u^3
  static Nonlinearity sine();                       // f(u) = sin(pi u)
  static Nonlinearity custom(std::vector<double> odd_coefficients);

  double f(double u) const;
  double df(double u) const;
  double d2f(double u) const;
  double F(double u) const;

  double f_prime_0() const { return fp0_; }
  double d3f_0() const { return f3_0_; }
  double beta0() const { return beta0_; }  // sqrt(F(1))
  double u_peak() const { return u0_; }    // zero of f' in (0, 1)

  NonlinearityKind kind() const { return kind_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  const std::string& name() const { return name_; }

 private:
  Nonlinearity() = default;
  void finalize();

  NonlinearityKind kind_ = NonlinearityKind::cubic;
  std::vector<double> coeffs_;  // custom only: c_j multiplies u^(2j+1)
  std::string name_;
  double fp0_ = 0.0, f3_0_ = 0.0, beta0_ = 0.0, u0_ = 0.0;
};

Nonlinearity make_nonlinearity(const std::string& kind,
                               const std::vector<double>& coefficients = {});

// Sampled verdicts on the shape conditions beyond the basic requirements.
// h refers to the curvature ratio f'(u) F(u) / f(u)^2 (see GKernel::eval_h_H);
// margins are the smallest observed slack, positive iff the check passed.
struct ConditionReport {
  bool shape_ok = false;            // zeros, signs, slopes, oddness
  bool single_peak = false;         // f' > 0 on (0, u_peak), < 0 on (u_peak, 1)
  bool h_decreasing = false;        // f'F/f^2 strictly decreasing on (0, u_peak)
  bool tail_nonincreasing = false;  // f'F^(3/2)/f^3 nonincreasing on (u_peak, 1)
  bool slope_ratio_below_one = false;  // f'(u) u / f(u) < 1 on (0, 1)

  double margin_shape = 0.0;
  double margin_peak = 0.0;
  double margin_h = 0.0;
  double margin_tail = 0.0;
  double margin_slope_ratio = 0.0;
  int n_samples = 0;

  bool strong() const { return single_peak && h_decreasing && tail_nonincreasing; }
};

ConditionReport check_conditions(const Nonlinearity& nl, int n_samples = 400);

struct GDerivs {
  double G;
  double G1;  // dG/dv
  double G2;  // d2G/dv2
};

struct CurvaturePair {
  double h;  // 1 - G''(v) v / G'(v)
  double H;  // v^2 - G(v) v / G'(v)
};

// Inverse of u -> sgn(u) sqrt(F(u)), mapping (-beta0, beta0) onto (-1, 1).
// Derivatives come from the closed forms G' = v / f(G), and
// G'' = (1 - f'(G) F(G) / f(G)^2) / f(G); below the small-|v| switch both
// are replaced by their Taylor forms about v = 0, which for odd f read
// G'(v) = (1 + 3 c v^2) / sqrt(f'(0)), G''(v) = 6 c v / sqrt(f'(0)) with
// c = -f'''(0) / (24 f'(0)^2).
class GKernel {
 public:
  explicit GKernel(Nonlinearity nl);

  const Nonlinearity& nonlinearity() const { return nl_; }
  double beta0() const { return nl_.beta0(); }
  double v_peak() const { return v0_; }  // G^{-1}(u_peak) = sqrt(F(u_peak))

  double eval_G(double v) const;
  GDerivs eval_G_derivs(double v) const;
  CurvaturePair eval_h_H(double v) const;

 private:
  double invert_F(double target_u2) const;  // custom kinds: solve F(u) = target

  Nonlinearity nl_;
  double v0_ = 0.0;
  double v_switch_ = 0.0;  // |v| below this uses the Taylor forms
  double taylor_c_ = 0.0;  // -f'''(0) / (24 f'(0)^2)
  double gp0_ = 0.0;       // 1 / sqrt(f'(0))
};

}  // namespace bifurcata
