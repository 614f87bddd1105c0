#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mtebounds/interval.hpp"
#include "mtebounds/moments.hpp"
#include "mtebounds/propensity.hpp"
#include "mtebounds/simplex.hpp"

namespace mtebounds {

/// Uniform grid of the two marginal treatment response functions on [0,1],
/// with finite value boxes per arm (the outcome support).
struct MtrGrid {
  int grid_g = 200;
  double m1_lo = 0.0, m1_hi = 1.0;
  double m0_lo = 0.0, m0_hi = 1.0;

  double dv() const { return 1.0 / grid_g; }
  double center(int g) const { return (g + 0.5) * dv(); }
  void validate() const;
};

/// One instrument pair at a fixed candidate propensity vector: the moment
/// contrast, the window (p_lo, p_hi) = (p(z'), p(z)), and the slack tolerance
/// with which the moment equality is imposed.
struct LpPairSpec {
  double delta_y;
  double p_lo, p_hi;
  double slack;
};

/// Discretized bound program at a fixed propensity vector. Variables are the
/// m1 then m0 grid values; each pair contributes the midpoint-rule moment row
///   sum_g [m1_g - m0_g] 1{center_g in (p_lo, p_hi)} dv = delta_y  (+- slack)
/// and the objective is m1 - m0 at the grid cell nearest vstar. Optional
/// Lipschitz rows bound adjacent differences by b*dv in both arms.
LpProblem build_lp(const std::vector<LpPairSpec>& pairs, const MtrGrid& grid, double vstar,
                   LpSense sense, std::optional<double> lipschitz_b = std::nullopt);

/// Index of the grid cell whose center is nearest to vstar.
int snap_to_grid(double vstar, const MtrGrid& grid);

struct LpEnvelope {
  Interval interval;       // [min of minima, max of maxima] over candidates
  int candidates = 0;      // propensity vectors examined
  int feasible = 0;        // candidates whose min and max programs solved
};

/// Bounds on MTE(vstar) without shape restrictions: solve the min and max
/// programs at every candidate propensity vector on a per-z uniform grid over
/// [p_lo(z), p_hi(z)], keep candidates whose pairwise differences respect
/// (0, 1] and the [dp_lo, dp_hi] intervals, and take the union envelope.
/// All candidates infeasible yields an empty interval.
LpEnvelope lp_mte_bounds(const MomentTable& moments, const PropensityBounds& pbounds,
                         const MtrGrid& grid, double vstar, int p_grid_n,
                         std::optional<double> lipschitz_b, const std::vector<double>& pair_slacks);

}  // namespace mtebounds
