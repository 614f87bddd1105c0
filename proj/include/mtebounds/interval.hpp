#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtebounds {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval on the extended reals. A crossed pair (lo > hi) encodes an
/// empty identified set; the endpoints are kept as computed so callers can see
/// how the set collapsed instead of silently truncating it.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool empty() const { return !(lo <= hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
};

inline Interval intersect(const Interval& a, const Interval& b) {
  return Interval{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

/// True when `inner` is contained in `outer` (an empty inner set is contained
/// in anything). `tol` loosens the comparison for floating-point checks.
inline bool subset_of(const Interval& inner, const Interval& outer, double tol = 0.0) {
  if (inner.empty()) return true;
  if (outer.empty()) return false;
  return outer.lo - tol <= inner.lo && inner.hi <= outer.hi + tol;
}

// Bound ratios under the weak-instrument convention: a bound whose denominator
// is not strictly positive carries no information and becomes infinite on its
// side. The propensity-difference denominators are positive under relevance
// with a known ordering; observed data may still contradict that.
inline double lower_ratio(double num, double den) { return den > 0.0 ? num / den : -kInf; }
inline double upper_ratio(double num, double den) { return den > 0.0 ? num / den : kInf; }

enum class Variant { smooth, smooth_monotone };

/// A maintained restriction on the sign of the treatment effect.
/// `nonpositive` is the treatment-cannot-hurt assumption (Y1 <= Y0).
enum class SignRestriction { none, nonpositive, nonnegative };

/// Which branch of the sign-case logic produced a bound.
enum class SignCase {
  positive,   // data (or restriction) certify MTE >= 0
  negative,   // data (or restriction) certify MTE <= 0
  ambiguous,  // sign not determined; hull over both sign cases
  conflict,   // both signs certified at once: evidence against assumptions
};

inline const char* to_string(SignCase c) {
  switch (c) {
    case SignCase::positive: return "pos";
    case SignCase::negative: return "neg";
    case SignCase::ambiguous: return "ambiguous";
    case SignCase::conflict: return "conflict";
  }
  return "?";
}

/// Known outcome support, per treatment arm. Used to clamp MTE bounds to
/// [y1_lo - y0_hi, y1_hi - y0_lo].
struct OutcomeSupport {
  double y1_lo, y1_hi;
  double y0_lo, y0_hi;

  static OutcomeSupport common(double lo, double hi) { return {lo, hi, lo, hi}; }

  void validate() const {
    if (!(y1_lo <= y1_hi) || !(y0_lo <= y0_hi))
      throw std::invalid_argument("outcome support: lo must not exceed hi");
  }
};

/// Configuration shared by the analytic bound pipeline.
struct BoundsConfig {
  double b = 1.0;                    // Lipschitz constant of the treatment responses
  double alpha = 0.0;                // unconditional misreporting probability
  Variant variant = Variant::smooth;
  SignRestriction effect_sign = SignRestriction::none;  // nonpositive == treatment cannot hurt
  std::optional<OutcomeSupport> y_support;
  int grid_n = 401;

  bool tch() const { return effect_sign == SignRestriction::nonpositive; }

  void validate() const {
    if (!(b >= 0.0)) throw std::invalid_argument("BoundsConfig: b must be >= 0");
    if (!(alpha >= 0.0 && alpha < 0.5))
      throw std::invalid_argument("BoundsConfig: alpha must lie in [0, 0.5)");
    if (grid_n < 3) throw std::invalid_argument("BoundsConfig: grid_n must be >= 3");
    if (y_support) y_support->validate();
  }
};

/// Bounds evaluated on a grid of v* values in [0,1].
struct IntervalCurve {
  std::vector<double> vstars;
  std::vector<Interval> intervals;
  std::vector<SignCase> cases;  // pre-clamp sign case, parallel to intervals

  std::size_t size() const { return vstars.size(); }
};

/// Uniform grid of n points spanning [0,1].
std::vector<double> uniform_grid(int n);

}  // namespace mtebounds
