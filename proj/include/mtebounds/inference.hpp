#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "mtebounds/interval.hpp"
#include "mtebounds/moments.hpp"

namespace mtebounds {

/// Standard normal quantile (Wichura's AS 241, double precision).
double normal_quantile(double p);

/// Nonparametric bootstrap standard deviation of a statistic: B resamples of
/// the rows with replacement, resample size equal to the original size.
/// Replicate r draws from its own seeded stream, so the result is
/// deterministic given `seed` and independent of evaluation order.
/// Replicates on which the statistic is non-finite (or throws) are dropped
/// and counted; more than 10% drops is an error. With `stratified` set, rows
/// are resampled within each instrument stratum, preserving the mix.
double bootstrap_sd(const Sample& sample, const std::function<double(const Sample&)>& statistic,
                    int replicates, std::uint64_t seed, bool stratified = false);

/// Same protocol for a vector-valued statistic; one shared set of resamples,
/// per-component standard deviations. A replicate is dropped when any
/// component is non-finite.
std::vector<double> bootstrap_sds(const Sample& sample,
                                  const std::function<std::vector<double>(const Sample&)>& statistic,
                                  int replicates, std::uint64_t seed, bool stratified = false);

/// Confidence interval for the whole identified set [point_lo, point_hi]:
/// each endpoint is pushed out by z_{(1+level)/2} times its standard error.
/// The se inputs are bootstrap standard deviations of the endpoint statistics
/// themselves, already on the statistic's scale, so no further 1/sqrt(n)
/// scaling is applied here.
struct CiResult {
  double point_lo, point_hi;
  double ci_lo, ci_hi;
  double se_lo, se_hi;
  double level;
  int replicates;
  std::uint64_t seed;
};

CiResult set_ci(double point_lo, double point_hi, double se_lo, double se_hi, std::int64_t n,
                double level, int replicates = 0, std::uint64_t seed = 0);

/// ATE interval under treatment-cannot-hurt using the outer propensity
/// substitutes P(D*=1|z)+alpha and P(D*=1|z')-alpha, which are free of
/// max/min kinks and hence bootstrap-friendly. Requires the applicability
/// conditions P(D*=1|z)+alpha <= 1 and P(D*=1|z')-alpha >= 0.
Interval ate_outer_plugin(const MomentTable& moments, double alpha, double b,
                          std::pair<int, int> pair);

}  // namespace mtebounds
