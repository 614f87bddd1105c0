#pragma once

#include <utility>
#include <vector>

#include "mtebounds/interval.hpp"
#include "mtebounds/moments.hpp"
#include "mtebounds/propensity.hpp"

namespace mtebounds {

/// Everything one instrument pair contributes to a bound at a given v*:
/// the outcome contrast, the interval for the propensity difference, and the
/// outer smoothing window [p_l(z_lo), p_u(z_hi)] over which the Lipschitz
/// slack is integrated.
struct PairInputs {
  double delta_y;
  double dp_lo, dp_hi;
  double win_lo;  // p_l of the low-propensity instrument value
  double win_hi;  // p_u of the high-propensity instrument value
};

/// Integral of |v - vstar| over [p_lo, p_hi], by the three closed forms for
/// the position of vstar relative to the window. Requires p_lo <= p_hi.
double abs_moment_integral(double p_lo, double p_hi, double vstar);

struct MteInterval {
  Interval interval;
  SignCase sign_case;
};

/// Smoothness bounds on MTE(vstar) from a single instrument pair.
///
/// With I = kappa * b * integral of |v - vstar| over the pair's window
/// (kappa = 2 for the smooth variant, 1 when monotonicity of the treatment
/// responses is added), the sign cases are:
///   delta_y - I >= 0  certifies MTE >= 0:  [(dy-I)/dp_hi, (dy+I)/dp_lo]
///   delta_y + I <= 0  certifies MTE <= 0:  [(dy-I)/dp_lo, (dy+I)/dp_hi]
///   neither: the sign is unknown and the identified set is the hull of the
///   two sign cases, [(dy-I)/dp_lo, (dy+I)/dp_lo].
/// A maintained sign restriction forces the corresponding branch regardless
/// of what the data certify; a data/assumption conflict then surfaces as a
/// crossed (empty) interval after clamping.
MteInterval mte_bounds_pair(const PairInputs& in, double b, double vstar, Variant variant,
                            SignRestriction restriction = SignRestriction::none);

/// Multi-pair aggregation: a sign certified by any pair is shared by all of
/// them, so the matching per-pair bounds are intersected across pairs. With a
/// single pair this reduces exactly to mte_bounds_pair.
MteInterval mte_bounds_multi(const std::vector<PairInputs>& pairs, double b, double vstar,
                             Variant variant, SignRestriction restriction = SignRestriction::none);

/// Clamp a bound to the outcome-support range and to the restricted sign
/// (upper bound 0 under treatment-cannot-hurt, lower bound 0 for a declared
/// nonnegative effect). Crossed clamps yield an empty interval.
Interval clamp(const Interval& interval, const BoundsConfig& config);

/// MTE bounds on a uniform v*-grid over [0,1]: multi-pair aggregation then
/// clamping at every grid point. `pairs` are (hi, lo) index pairs into the
/// moment table.
IntervalCurve mte_curve(const MomentTable& moments, const PropensityBounds& pbounds,
                        const BoundsConfig& config, const std::vector<std::pair<int, int>>& pairs);

/// Convenience: propensity bounds at config.alpha and all ordered pairs.
IntervalCurve analytic_curve(const MomentTable& moments, const BoundsConfig& config);

/// LATE bounds for a pair with known propensity difference (no misreporting):
/// [(dy - (2b/3) dp^3)/dp, (dy + (2b/3) dp^3)/dp].
Interval late_bounds(double delta_y, double dp, double b);

/// Closed-form ATE bounds with known propensities (no misreporting), i.e. the
/// integral over [0,1] of the pairwise MTE bound curve. The lower bound
/// mirrors the upper one with the sign of every b-term flipped.
double ate_upper_analytic(double delta_y, double p1, double p0, double b);
double ate_lower_analytic(double delta_y, double p1, double p0, double b);

/// Closed-form ATE lower bound under treatment-cannot-hurt with misreporting:
/// [dy - (2b/3)(p1u^3-p0l^3) + b(p1u^2-p0l^2) - b(p1u-p0l)] / dp_lo.
/// The caller clamps at minus the support width when the outcome is bounded.
double ate_lower_analytic_tch(double delta_y, double p1u, double p0l, double dp_lo, double b);

enum class MeanRule { trapezoid, plain };

/// Grid integral of the lower and upper curves. Trapezoid weights by default;
/// `plain` reproduces the unweighted grid mean. Any empty grid interval makes
/// the whole ATE set empty.
Interval ate_bounds_numeric(const IntervalCurve& curve, MeanRule rule = MeanRule::trapezoid);

/// Smoothness constant consistent with an external ATE value:
/// (ate_ref - dy/dp) / [(2/3)(p1^3-p0^3)/dp - (p1^2-p0^2)/dp + 1].
double b_from_ate(double ate_ref, double delta_y, double p1, double p0);

/// The b at which the analytic ATE upper bound crosses zero.
double breakdown_b(double delta_y, double p1, double p0);

/// Held-out consistency check for a candidate b: the moment contrast of a
/// pair left out of the curve construction must lie between the integrals of
/// the curve's lower and upper bounds over that pair's outer propensity
/// window [p_l(z_lo), p_u(z_hi)].
bool b_feasible(const IntervalCurve& curve, double heldout_delta_y, double window_lo,
                double window_hi);

/// Wrapper resolving the held-out pair's window from the propensity bounds.
/// Requires an instrument with at least three values.
bool b_feasible(const IntervalCurve& curve, const MomentTable& moments,
                const PropensityBounds& pbounds, std::pair<int, int> heldout_pair);

}  // namespace mtebounds
