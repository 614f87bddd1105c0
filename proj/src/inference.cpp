#include "mtebounds/inference.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "mtebounds/analytic.hpp"

namespace mtebounds {

// Wichura's algorithm AS 241 (PPND16): the standard normal quantile to full
// double precision via three rational approximations.
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("normal_quantile: p must lie strictly in (0,1)");
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
  }
  return q < 0.0 ? -value : value;
}

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

Sample resample(const Sample& sample, std::mt19937_64& rng, bool stratified,
                const std::vector<std::vector<std::size_t>>& strata) {
  const std::size_t n = sample.size();
  Sample out;
  out.y.resize(n);
  out.dstar.resize(n);
  out.z.resize(n);
  std::size_t pos = 0;
  auto draw_into = [&](const std::vector<std::size_t>& pool) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const std::size_t src = pool[pick(rng)];
      out.y[pos] = sample.y[src];
      out.dstar[pos] = sample.dstar[src];
      out.z[pos] = sample.z[src];
      ++pos;
    }
  };
  if (!stratified) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t src = pick(rng);
      out.y[i] = sample.y[src];
      out.dstar[i] = sample.dstar[src];
      out.z[i] = sample.z[src];
    }
  } else {
    for (const auto& pool : strata) draw_into(pool);
  }
  return out;
}

std::vector<std::vector<std::size_t>> build_strata(const Sample& sample) {
  std::int32_t zmax = 0;
  for (auto z : sample.z) zmax = std::max(zmax, z);
  std::vector<std::vector<std::size_t>> strata(zmax + 1);
  for (std::size_t i = 0; i < sample.size(); ++i) strata[sample.z[i]].push_back(i);
  return strata;
}

}  // namespace

std::vector<double> bootstrap_sds(const Sample& sample,
                                  const std::function<std::vector<double>(const Sample&)>& statistic,
                                  int replicates, std::uint64_t seed, bool stratified) {
  if (replicates < 2) throw std::invalid_argument("bootstrap: need at least 2 replicates");
  if (sample.size() == 0) throw std::invalid_argument("bootstrap: empty sample");

  const auto strata = stratified ? build_strata(sample) : std::vector<std::vector<std::size_t>>{};
  std::vector<std::vector<double>> kept;
  int dropped = 0;
  for (int r = 0; r < replicates; ++r) {
    std::mt19937_64 rng(mix(seed, static_cast<std::uint64_t>(r)));
    const Sample rs = resample(sample, rng, stratified, strata);
    bool ok = true;
    std::vector<double> value;
    try {
      value = statistic(rs);
      for (double v : value)
        if (!std::isfinite(v)) ok = false;
    } catch (const std::exception&) {
      ok = false;
    }
    if (ok && !value.empty()) {
      kept.push_back(std::move(value));
    } else {
      ++dropped;
    }
  }
  if (dropped * 10 > replicates)
    throw std::runtime_error("bootstrap: more than 10% of replicates were dropped (" +
                             std::to_string(dropped) + "/" + std::to_string(replicates) + ")");
  if (kept.size() < 2) throw std::runtime_error("bootstrap: fewer than 2 usable replicates");

  const std::size_t dim = kept.front().size();
  std::vector<double> sds(dim, 0.0);
  for (std::size_t c = 0; c < dim; ++c) {
    double mean = 0.0;
    for (const auto& v : kept) mean += v[c];
    mean /= static_cast<double>(kept.size());
    double ss = 0.0;
    for (const auto& v : kept) ss += (v[c] - mean) * (v[c] - mean);
    sds[c] = std::sqrt(ss / static_cast<double>(kept.size() - 1));
  }
  return sds;
}

double bootstrap_sd(const Sample& sample, const std::function<double(const Sample&)>& statistic,
                    int replicates, std::uint64_t seed, bool stratified) {
  auto wrapped = [&](const Sample& s) { return std::vector<double>{statistic(s)}; };
  return bootstrap_sds(sample, wrapped, replicates, seed, stratified).front();
}

CiResult set_ci(double point_lo, double point_hi, double se_lo, double se_hi, std::int64_t n,
                double level, int replicates, std::uint64_t seed) {
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("set_ci: level must lie strictly in (0,1)");
  if (n < 1) throw std::invalid_argument("set_ci: n must be >= 1");
  if (!(se_lo >= 0.0 && se_hi >= 0.0)) throw std::invalid_argument("set_ci: negative se");
  const double z = normal_quantile((1.0 + level) / 2.0);
  CiResult r;
  r.point_lo = point_lo;
  r.point_hi = point_hi;
  r.se_lo = se_lo;
  r.se_hi = se_hi;
  r.ci_lo = point_lo - z * se_lo;
  r.ci_hi = point_hi + z * se_hi;
  r.level = level;
  r.replicates = replicates;
  r.seed = seed;
  return r;
}

Interval ate_outer_plugin(const MomentTable& moments, double alpha, double b,
                          std::pair<int, int> pair) {
  MisreportLevel level(alpha);
  const auto [hi, lo] = pair;
  const PairDeltas d = pair_deltas(moments, hi, lo);
  const double p1_outer = moments.pdstar[hi] + alpha;
  const double p0_outer = moments.pdstar[lo] - alpha;
  if (p1_outer > 1.0)
    throw std::invalid_argument(
        "ate_outer_plugin: applicability requires P(D*=1|z) + alpha <= 1");
  if (p0_outer < 0.0)
    throw std::invalid_argument(
        "ate_outer_plugin: applicability requires P(D*=1|z') - alpha >= 0");
  const double lower = ate_lower_analytic_tch(d.delta_y, p1_outer, p0_outer, d.delta_dstar, b);
  return {lower, 0.0};
}

}  // namespace mtebounds
