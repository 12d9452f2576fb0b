#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bifurcata/shooting.hpp"

namespace bifurcata {

enum class BranchKind { odd, even, secondary, trivial };

const char* branch_kind_name(BranchKind kind);

// One matched solution pair (lambda, beta1, beta2) on a solution branch.
struct BranchPoint {
  double lambda = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double u1 = 0.0;  // u(1) = G(beta2), the customary plot ordinate
  int k = 0;
  BranchKind kind = BranchKind::trivial;
  double D = 0.0;  // transversality determinant of the matching system
  std::optional<int> morse;
};

// Sampled solution u(x) on [-1,1] minus the interface, with one-sided data.
struct SolutionProfile {
  std::vector<double> x;  // ascending, never 0
  std::vector<double> u;
  std::vector<double> ux;
  double u_left = 0.0, u_right = 0.0;    // u(-0), u(+0)
  double ux_left = 0.0, ux_right = 0.0;  // u_x(-0), u_x(+0)
  double lambda = 0.0;
  double beta1 = 0.0, beta2 = 0.0;
};

// Symmetry-breaking point on an odd primary branch.
struct BifurcationPoint {
  int k = 0;
  double beta_star = 0.0;
  double phi_star = 0.0;
  double lambda_star = 0.0;
  double u1 = 0.0;  // u(1) of the branch point, for plotting
  int sign = +1;
};

struct SecondaryBranch {
  std::vector<BranchPoint> points;  // ordered along the curve
  BifurcationPoint origin;
};

// Amplitude grid clustered geometrically toward the rim, where lambda blows
// up: distances to beta0 shrink by a fixed ratio so the last point sits at
// beta0 * (1 - rim_gap).  A positive beta_max retargets the ladder to end
// exactly there instead, so lambda-bounded sweeps keep all n points.
struct BetaGrid {
  int n = 200;
  double rim_gap = 1e-6;
  double beta_max = -1.0;  // <= 0: no clip
};

std::vector<double> make_beta_grid(double beta0, const BetaGrid& grid);

// Sweep of the k-th primary branch of the given parity; sign < 0 returns the
// mirror image (beta, lambda unchanged in magnitude, amplitudes negated).
// Throws MonotonicityViolation if lambda fails to increase strictly along
// the grid.
std::vector<BranchPoint> trace_primary(const ShootingContext& sc, int k,
                                       Parity parity, int sign,
                                       const BetaGrid& grid);

// Samples u over both half-intervals from the closed-form phase solution.
SolutionProfile reconstruct_solution(const ShootingContext& sc, double lambda,
                                     double beta1, double beta2, int n_grid);

// Points (n, lambda_n) where branches leave the trivial solution, n ordered
// by lambda: odd n through roots of a z tan z = 1, even n at (k pi)^2 scaled
// by f'(0).  Each returned lambda_n is verified to flip the sign of
// D(lambda, 0, 0).
std::vector<std::pair<int, double>> find_primary_bifurcations(
    const ShootingContext& sc, double lambda_max);

// Sign changes of beta -> Q_beta(lambda_k(beta), beta) on (0, beta0), each
// refined by bisection; the mirrored point at -beta_star is implied and not
// listed.  Throws NoRootFound if no sign change exists (the guaranteed
// endpoint signs then indicate a quadrature failure).
std::vector<BifurcationPoint> find_secondary_bifurcations(
    const ShootingContext& sc, int k, int n_scan = 2000);

// Pseudo-arclength continuation of the matching system away from a
// symmetry-breaking point, in both directions along the kernel direction
// transverse to the symmetric subspace.  Stops at n_steps per direction, at
// lambda_max, or at the domain edge; a persistently failing corrector ends
// the affected direction with a partial branch.
SecondaryBranch trace_secondary(const ShootingContext& sc,
                                const BifurcationPoint& origin, double step,
                                int n_steps, double lambda_max);

struct DiagramOptions {
  int branch_points = 200;
  int scan_points = 2000;
  int secondary_steps = 150;
  double secondary_step = -1.0;  // <= 0: 1e-3 * beta0
  int trivial_points = 100;
};

struct DiagramBranch {
  std::string id;
  int k = 0;
  BranchKind kind = BranchKind::trivial;
  int sign = 0;
  std::vector<BranchPoint> points;
};

struct Diagram {
  std::string nonlinearity;
  double a = 0.0;
  double lambda_max = 0.0;
  std::vector<DiagramBranch> branches;
  std::vector<std::pair<int, double>> primary_bifurcations;
  std::vector<BifurcationPoint> secondary_bifurcations;  // all four signs
  std::vector<std::string> warnings;
};

// Full diagram: trivial branch, primary branches with mirrors up to
// lambda_max, secondary bifurcation points on the odd branches and the
// branches continued from them, with u(1) = G(beta2) as plot ordinate.
Diagram assemble_diagram(const ShootingContext& sc, int k_max,
                         double lambda_max, const DiagramOptions& opts = {});

}  // namespace bifurcata
