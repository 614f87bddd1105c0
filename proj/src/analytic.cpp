#include "mtebounds/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mtebounds {

std::vector<double> uniform_grid(int n) {
  if (n < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = static_cast<double>(i) / (n - 1);
  return g;
}

double abs_moment_integral(double p_lo, double p_hi, double vstar) {
  if (!(p_lo <= p_hi)) throw std::invalid_argument("abs_moment_integral: p_lo must not exceed p_hi");
  if (vstar <= p_lo) return (p_hi * p_hi - p_lo * p_lo) / 2.0 + vstar * (p_lo - p_hi);
  if (vstar >= p_hi) return (p_lo * p_lo - p_hi * p_hi) / 2.0 + vstar * (p_hi - p_lo);
  return vstar * vstar - vstar * (p_hi + p_lo) + (p_hi * p_hi + p_lo * p_lo) / 2.0;
}

namespace {

struct PairTerms {
  double dy;
  double slack;  // kappa * b * integral of |v - vstar| over the pair window
  double dp_lo, dp_hi;
};

// Intersections across pairs of the per-pair bounds valid under each sign.
// When MTE >= 0 the bound on the true dp uses dp_hi below and dp_lo above;
// when MTE <= 0 the roles swap.
Interval aggregate_positive(const std::vector<PairTerms>& ts) {
  Interval r{-kInf, kInf};
  for (const auto& t : ts) {
    r.lo = std::max(r.lo, lower_ratio(t.dy - t.slack, t.dp_hi));
    r.hi = std::min(r.hi, upper_ratio(t.dy + t.slack, t.dp_lo));
  }
  return r;
}

Interval aggregate_negative(const std::vector<PairTerms>& ts) {
  Interval r{-kInf, kInf};
  for (const auto& t : ts) {
    r.lo = std::max(r.lo, lower_ratio(t.dy - t.slack, t.dp_lo));
    r.hi = std::min(r.hi, upper_ratio(t.dy + t.slack, t.dp_hi));
  }
  return r;
}

// Sign unknown: per pair the identified set is the hull of the two sign
// cases, which collapses to the dp_lo denominators on both sides; pairs then
// intersect. The hull keeps the case transitions continuous, so bounds nest
// as alpha or b grow.
Interval aggregate_ambiguous(const std::vector<PairTerms>& ts) {
  Interval r{-kInf, kInf};
  for (const auto& t : ts) {
    r.lo = std::max(r.lo, lower_ratio(t.dy - t.slack, t.dp_lo));
    r.hi = std::min(r.hi, upper_ratio(t.dy + t.slack, t.dp_lo));
  }
  return r;
}

}  // namespace

MteInterval mte_bounds_multi(const std::vector<PairInputs>& pairs, double b, double vstar,
                             Variant variant, SignRestriction restriction) {
  if (pairs.empty()) throw std::invalid_argument("mte_bounds_multi: need at least one pair");
  if (!(b >= 0.0)) throw std::invalid_argument("mte_bounds_multi: b must be >= 0");
  const double kappa = variant == Variant::smooth ? 2.0 : 1.0;

  std::vector<PairTerms> ts;
  ts.reserve(pairs.size());
  bool any_pos = false, any_neg = false;
  for (const auto& p : pairs) {
    const double slack = kappa * b * abs_moment_integral(p.win_lo, p.win_hi, vstar);
    ts.push_back({p.delta_y, slack, p.dp_lo, p.dp_hi});
    any_pos = any_pos || (p.delta_y - slack >= 0.0);
    any_neg = any_neg || (p.delta_y + slack <= 0.0);
  }

  // A maintained sign restriction fixes the branch outright; a conflict with
  // what the data certify then shows up as a crossed interval downstream.
  if (restriction == SignRestriction::nonnegative)
    return {aggregate_positive(ts), SignCase::positive};
  if (restriction == SignRestriction::nonpositive)
    return {aggregate_negative(ts), SignCase::negative};

  if (any_pos && any_neg)
    return {intersect(aggregate_positive(ts), aggregate_negative(ts)), SignCase::conflict};
  if (any_pos) return {aggregate_positive(ts), SignCase::positive};
  if (any_neg) return {aggregate_negative(ts), SignCase::negative};
  return {aggregate_ambiguous(ts), SignCase::ambiguous};
}

MteInterval mte_bounds_pair(const PairInputs& in, double b, double vstar, Variant variant,
                            SignRestriction restriction) {
  return mte_bounds_multi({in}, b, vstar, variant, restriction);
}

Interval clamp(const Interval& interval, const BoundsConfig& config) {
  double lo_cap = -kInf, hi_cap = kInf;
  if (config.y_support) {
    lo_cap = config.y_support->y1_lo - config.y_support->y0_hi;
    hi_cap = config.y_support->y1_hi - config.y_support->y0_lo;
  }
  if (config.effect_sign == SignRestriction::nonpositive) hi_cap = std::min(hi_cap, 0.0);
  if (config.effect_sign == SignRestriction::nonnegative) lo_cap = std::max(lo_cap, 0.0);
  return {std::max(interval.lo, lo_cap), std::min(interval.hi, hi_cap)};
}

IntervalCurve mte_curve(const MomentTable& moments, const PropensityBounds& pbounds,
                        const BoundsConfig& config, const std::vector<std::pair<int, int>>& pairs) {
  config.validate();
  if (pairs.empty()) throw std::invalid_argument("mte_curve: need at least one pair");

  std::vector<PairInputs> inputs;
  inputs.reserve(pairs.size());
  for (auto [hi, lo] : pairs) {
    const PairDeltas d = pair_deltas(moments, hi, lo);
    inputs.push_back({d.delta_y, pbounds.dp_lo(hi, lo), pbounds.dp_hi(hi, lo), pbounds.p_lo[lo],
                      pbounds.p_hi[hi]});
  }

  IntervalCurve curve;
  curve.vstars = uniform_grid(config.grid_n);
  curve.intervals.reserve(curve.vstars.size());
  curve.cases.reserve(curve.vstars.size());
  for (double v : curve.vstars) {
    MteInterval r = mte_bounds_multi(inputs, config.b, v, config.variant, config.effect_sign);
    curve.intervals.push_back(clamp(r.interval, config));
    curve.cases.push_back(r.sign_case);
  }
  return curve;
}

IntervalCurve analytic_curve(const MomentTable& moments, const BoundsConfig& config) {
  const PropensityBounds pb = compute_propensity_bounds(moments, MisreportLevel(config.alpha));
  return mte_curve(moments, pb, config, all_pairs(moments.size()));
}

Interval late_bounds(double delta_y, double dp, double b) {
  if (dp == 0.0) throw std::invalid_argument("late_bounds: dp must be nonzero");
  if (!(b >= 0.0)) throw std::invalid_argument("late_bounds: b must be >= 0");
  const double cube = (2.0 * b / 3.0) * dp * dp * dp;
  return {(delta_y - cube) / dp, (delta_y + cube) / dp};
}

namespace {

// (2/3)(p1^3-p0^3)/dp - (p1^2-p0^2)/dp + 1, the coefficient multiplying b in
// the closed-form ATE upper bound. Equals the [0,1]-integral of the window
// integral of 2|v - v*| divided by dp, hence strictly positive for p1 > p0.
double ate_b_coefficient(double p1, double p0) {
  const double dp = p1 - p0;
  return (2.0 / 3.0) * (p1 * p1 * p1 - p0 * p0 * p0) / dp - (p1 * p1 - p0 * p0) / dp + 1.0;
}

}  // namespace

double ate_upper_analytic(double delta_y, double p1, double p0, double b) {
  if (p1 == p0) throw std::invalid_argument("ate_upper_analytic: propensities must differ");
  return delta_y / (p1 - p0) + b * ate_b_coefficient(p1, p0);
}

double ate_lower_analytic(double delta_y, double p1, double p0, double b) {
  if (p1 == p0) throw std::invalid_argument("ate_lower_analytic: propensities must differ");
  return delta_y / (p1 - p0) - b * ate_b_coefficient(p1, p0);
}

double ate_lower_analytic_tch(double delta_y, double p1u, double p0l, double dp_lo, double b) {
  const double num = delta_y - (2.0 * b / 3.0) * (p1u * p1u * p1u - p0l * p0l * p0l) +
                     b * (p1u * p1u - p0l * p0l) - b * (p1u - p0l);
  return lower_ratio(num, dp_lo);
}

Interval ate_bounds_numeric(const IntervalCurve& curve, MeanRule rule) {
  const std::size_t n = curve.size();
  if (n < 2 || curve.intervals.size() != n)
    throw std::invalid_argument("ate_bounds_numeric: malformed curve");
  for (const auto& iv : curve.intervals)
    if (iv.empty()) return {kInf, -kInf};  // empty set at any v* empties the ATE set

  double lo = 0.0, hi = 0.0;
  if (rule == MeanRule::plain) {
    for (const auto& iv : curve.intervals) {
      lo += iv.lo;
      hi += iv.hi;
    }
    lo /= static_cast<double>(n);
    hi /= static_cast<double>(n);
  } else {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double h = curve.vstars[i + 1] - curve.vstars[i];
      lo += 0.5 * h * (curve.intervals[i].lo + curve.intervals[i + 1].lo);
      hi += 0.5 * h * (curve.intervals[i].hi + curve.intervals[i + 1].hi);
    }
    const double span = curve.vstars.back() - curve.vstars.front();
    lo /= span;
    hi /= span;
  }
  return {lo, hi};
}

double b_from_ate(double ate_ref, double delta_y, double p1, double p0) {
  if (p1 == p0) throw std::invalid_argument("b_from_ate: propensities must differ");
  return (ate_ref - delta_y / (p1 - p0)) / ate_b_coefficient(p1, p0);
}

double breakdown_b(double delta_y, double p1, double p0) {
  return b_from_ate(0.0, delta_y, p1, p0);
}

namespace {

// Trapezoid integral of one side of the curve over [a, b] within [0,1], with
// linear interpolation at the window edges. Infinite values propagate.
double integrate_side(const IntervalCurve& curve, double a, double b, bool lower) {
  const auto& v = curve.vstars;
  const std::size_t n = v.size();
  auto side = [&](std::size_t i) { return lower ? curve.intervals[i].lo : curve.intervals[i].hi; };
  auto value_at = [&](double x) -> double {
    if (x <= v.front()) return side(0);
    if (x >= v.back()) return side(n - 1);
    const std::size_t j = static_cast<std::size_t>(
        std::upper_bound(v.begin(), v.end(), x) - v.begin());
    const double t = (x - v[j - 1]) / (v[j] - v[j - 1]);
    const double y0 = side(j - 1), y1 = side(j);
    if (std::isinf(y0) || std::isinf(y1)) return lower ? -kInf : kInf;
    return y0 + t * (y1 - y0);
  };

  double acc = 0.0;
  double prev_x = a, prev_y = value_at(a);
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] <= a || v[i] >= b) continue;
    acc += 0.5 * (v[i] - prev_x) * (prev_y + value_at(v[i]));
    prev_x = v[i];
    prev_y = value_at(v[i]);
  }
  acc += 0.5 * (b - prev_x) * (prev_y + value_at(b));
  return acc;
}

}  // namespace

bool b_feasible(const IntervalCurve& curve, double heldout_delta_y, double window_lo,
                double window_hi) {
  if (!(window_lo <= window_hi))
    throw std::invalid_argument("b_feasible: window_lo must not exceed window_hi");
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve.vstars[i] >= window_lo && curve.vstars[i] <= window_hi &&
        curve.intervals[i].empty())
      return false;
  }
  const double lo_int = integrate_side(curve, window_lo, window_hi, /*lower=*/true);
  const double hi_int = integrate_side(curve, window_lo, window_hi, /*lower=*/false);
  return lo_int <= heldout_delta_y && heldout_delta_y <= hi_int;
}

bool b_feasible(const IntervalCurve& curve, const MomentTable& moments,
                const PropensityBounds& pbounds, std::pair<int, int> heldout_pair) {
  if (moments.size() < 3)
    throw std::invalid_argument(
        "b_feasible: the held-out check needs an instrument with at least 3 values");
  const auto [hi, lo] = heldout_pair;
  const PairDeltas d = pair_deltas(moments, hi, lo);
  return b_feasible(curve, d.delta_y, pbounds.p_lo[lo], pbounds.p_hi[hi]);
}

}  // namespace mtebounds
