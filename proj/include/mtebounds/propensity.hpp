#pragma once

#include <utility>
#include <vector>

#include "mtebounds/moments.hpp"

namespace mtebounds {

/// Unconditional misreporting probability, restricted to [0, 0.5).
class MisreportLevel {
 public:
  explicit MisreportLevel(double alpha);
  double value() const { return alpha_; }

 private:
  double alpha_;
};

/// Interval [p_l(z), p_u(z)] for the true propensity score given the observed
/// share P(D*=1|Z=z) and the misreporting level. The upper branch
/// (1-alpha) + P(D*=0|Z=z) can exceed 1; the result is clipped to [0,1].
std::pair<double, double> propensity_interval(double pdstar, MisreportLevel alpha);

/// Interval [dp_lo, dp_hi] for the true difference p(z)-p(z') given the
/// observed difference of treatment shares. dp_lo equals the observed
/// difference and may be nonpositive; downstream bounds then go vacuous
/// rather than erroring.
std::pair<double, double> delta_p_interval(double delta_dstar, MisreportLevel alpha);

/// Propensity-score intervals for every instrument value and every ordered
/// pair, at a common misreporting level.
struct PropensityBounds {
  std::vector<double> p_lo, p_hi;  // per z, in ordering order
  // dense (k x k) matrices indexed [hi * k + lo]; only hi != lo entries used
  std::vector<double> dp_lo_mat, dp_hi_mat;
  int k = 0;

  double dp_lo(int hi, int lo) const { return dp_lo_mat.at(hi * k + lo); }
  double dp_hi(int hi, int lo) const { return dp_hi_mat.at(hi * k + lo); }
};

PropensityBounds compute_propensity_bounds(const MomentTable& moments, MisreportLevel alpha);

}  // namespace mtebounds
