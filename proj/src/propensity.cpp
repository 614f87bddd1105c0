#include "mtebounds/propensity.hpp"

#include <algorithm>
#include <stdexcept>

namespace mtebounds {

MisreportLevel::MisreportLevel(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha < 0.5))
    throw std::invalid_argument("misreporting level must lie in [0, 0.5)");
}

std::pair<double, double> propensity_interval(double pdstar, MisreportLevel alpha) {
  if (!(pdstar >= 0.0 && pdstar <= 1.0))
    throw std::invalid_argument("propensity_interval: pdstar must lie in [0,1]");
  const double a = alpha.value();
  double lo = std::max(pdstar - a, a - pdstar);
  double hi = std::min(pdstar + a, (1.0 - a) + (1.0 - pdstar));
  lo = std::clamp(lo, 0.0, 1.0);
  hi = std::clamp(hi, 0.0, 1.0);
  return {lo, hi};
}

std::pair<double, double> delta_p_interval(double delta_dstar, MisreportLevel alpha) {
  if (!(delta_dstar >= -1.0 && delta_dstar <= 1.0))
    throw std::invalid_argument("delta_p_interval: |delta_dstar| must not exceed 1");
  const double a = alpha.value();
  const double hi = std::min({1.0, 2.0 * a + delta_dstar, 2.0 * (1.0 - a) - delta_dstar});
  return {delta_dstar, hi};
}

PropensityBounds compute_propensity_bounds(const MomentTable& moments, MisreportLevel alpha) {
  const int k = moments.size();
  PropensityBounds pb;
  pb.k = k;
  pb.p_lo.resize(k);
  pb.p_hi.resize(k);
  pb.dp_lo_mat.assign(k * k, 0.0);
  pb.dp_hi_mat.assign(k * k, 0.0);
  for (int z = 0; z < k; ++z) {
    auto [lo, hi] = propensity_interval(moments.pdstar[z], alpha);
    pb.p_lo[z] = lo;
    pb.p_hi[z] = hi;
  }
  for (int hi = 0; hi < k; ++hi) {
    for (int lo = 0; lo < k; ++lo) {
      if (hi == lo) continue;
      auto [dlo, dhi] = delta_p_interval(moments.pdstar[hi] - moments.pdstar[lo], alpha);
      pb.dp_lo_mat[hi * k + lo] = dlo;
      pb.dp_hi_mat[hi * k + lo] = dhi;
    }
  }
  return pb;
}

}  // namespace mtebounds
