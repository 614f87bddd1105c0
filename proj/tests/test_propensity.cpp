#include <doctest.h>

#include <cmath>

#include <random>

#include "mtebounds/propensity.hpp"
#include "mtebounds/simulation.hpp"
#include "test_util.hpp"

using namespace mtebounds;

TEST_SUITE("propensity") {

TEST_CASE("propensity interval branch values") {
  auto [l0, h0] = propensity_interval(0.49, MisreportLevel(0.0));
  CHECK(l0 == doctest::Approx(0.49).epsilon(1e-15));
  CHECK(h0 == doctest::Approx(0.49).epsilon(1e-15));

  auto [l1, h1] = propensity_interval(0.49, MisreportLevel(0.1));
  CHECK(l1 == doctest::Approx(0.39).epsilon(1e-12));
  CHECK(h1 == doctest::Approx(0.59).epsilon(1e-12));

  auto [l2, h2] = propensity_interval(0.05, MisreportLevel(0.15));
  CHECK(l2 == doctest::Approx(0.10).epsilon(1e-12));
  CHECK(h2 == doctest::Approx(0.20).epsilon(1e-12));
  CHECK(l2 <= 0.10);  // contains the oracle truth p = 0.10
  CHECK(h2 >= 0.10);
}

TEST_CASE("delta interval branch values") {
  auto [l0, h0] = delta_p_interval(0.50, MisreportLevel(0.15));
  CHECK(l0 == doctest::Approx(0.50).epsilon(1e-15));
  CHECK(h0 == doctest::Approx(0.80).epsilon(1e-12));

  auto [l1, h1] = delta_p_interval(0.11, MisreportLevel(0.0));
  CHECK(l1 == doctest::Approx(0.11).epsilon(1e-15));
  CHECK(h1 == doctest::Approx(0.11).epsilon(1e-15));

  auto [l2, h2] = delta_p_interval(0.11, MisreportLevel(0.1));
  CHECK(l2 == doctest::Approx(0.11).epsilon(1e-15));
  CHECK(h2 == doctest::Approx(0.31).epsilon(1e-12));
}

// Interval nesting in alpha holds on the regime where the observed share
// dominates the misreporting level, alpha <= min(pdstar, 1-pdstar) per value
// (and alpha <= (1-delta)/2 for the differences). Beyond it the max/min
// branches flip and an exactly-known larger alpha genuinely excludes
// propensities a smaller one allows, so the intervals are not nested there.
TEST_CASE("nesting in alpha on the dominated regime") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const double pd = testutil::uniform(rng, 0.05, 0.95);
    const double dd = testutil::uniform(rng, -1.0, 1.0);
    const double p_cap = std::min({pd, 1.0 - pd, 0.4999});
    double a1 = testutil::uniform(rng, 0.0, p_cap);
    double a2 = testutil::uniform(rng, 0.0, p_cap);
    if (a1 > a2) std::swap(a1, a2);
    auto [pl1, ph1] = propensity_interval(pd, MisreportLevel(a1));
    auto [pl2, ph2] = propensity_interval(pd, MisreportLevel(a2));
    CHECK(pl2 <= pl1 + 1e-12);
    CHECK(ph2 >= ph1 - 1e-12);

    const double d_cap = std::min(0.4999, dd > 0.0 ? (1.0 - dd) / 2.0 : 0.4999);
    double b1 = testutil::uniform(rng, 0.0, d_cap);
    double b2 = testutil::uniform(rng, 0.0, d_cap);
    if (b1 > b2) std::swap(b1, b2);
    auto [dl1, dh1] = delta_p_interval(dd, MisreportLevel(b1));
    auto [dl2, dh2] = delta_p_interval(dd, MisreportLevel(b2));
    CHECK(dl2 <= dl1 + 1e-12);
    CHECK(dh2 >= dh1 - 1e-12);
  }
}

TEST_CASE("outside the dominated regime a larger alpha can exclude propensities") {
  // pdstar = 0.05: alpha above it activates the mirror branch of p_l
  auto [lo_small, hi_small] = propensity_interval(0.05, MisreportLevel(0.1));
  auto [lo_large, hi_large] = propensity_interval(0.05, MisreportLevel(0.2));
  CHECK(lo_large > lo_small);  // 0.15 > 0.05: not nested, and correctly so
  CHECK(hi_large >= hi_small);
}

TEST_CASE("alpha zero is degenerate") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const double pd = testutil::uniform(rng, 0.0, 1.0);
    auto [lo, hi] = propensity_interval(pd, MisreportLevel(0.0));
    CHECK(lo == doctest::Approx(pd).epsilon(1e-15));
    CHECK(hi == doctest::Approx(pd).epsilon(1e-15));
  }
}

TEST_CASE("clipping keeps intervals inside [0,1]") {
  auto [lo, hi] = propensity_interval(0.9, MisreportLevel(0.3));
  CHECK(hi <= 1.0);  // 0.9 + 0.3 clips
  CHECK(lo >= 0.0);
  auto [lo2, hi2] = propensity_interval(0.0, MisreportLevel(0.3));
  CHECK(lo2 >= 0.0);
  CHECK(hi2 <= 1.0);
}

TEST_CASE("flip-model population truth is covered") {
  for (const DgpSpec& spec : {dgp::demo_flip(), dgp::demo_flip3()}) {
    const MomentTable pop = population_moments(spec);
    const PropensityBounds pb = compute_propensity_bounds(pop, MisreportLevel(spec.alpha()));
    const int k = pop.size();
    for (int z = 0; z < k; ++z) {
      CHECK(pb.p_lo[z] <= spec.p_of_z[z] + 1e-12);
      CHECK(pb.p_hi[z] >= spec.p_of_z[z] - 1e-12);
    }
    for (auto [hi, lo] : all_pairs(k)) {
      const double dp = spec.p_of_z[hi] - spec.p_of_z[lo];
      CHECK(pb.dp_lo(hi, lo) <= dp + 1e-12);
      CHECK(pb.dp_hi(hi, lo) >= dp - 1e-12);
    }
  }
}

TEST_CASE("level validation") {
  CHECK_THROWS_AS(MisreportLevel(0.5), std::invalid_argument);
  CHECK_THROWS_AS(MisreportLevel(-0.01), std::invalid_argument);
  CHECK_THROWS_AS(propensity_interval(1.5, MisreportLevel(0.1)), std::invalid_argument);
  CHECK_THROWS_AS(delta_p_interval(1.5, MisreportLevel(0.1)), std::invalid_argument);
}

}  // TEST_SUITE
