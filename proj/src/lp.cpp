#include "mtebounds/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mtebounds {

void MtrGrid::validate() const {
  if (grid_g < 2) throw std::invalid_argument("mtr grid: need at least 2 cells");
  if (!std::isfinite(m1_lo) || !std::isfinite(m1_hi) || !std::isfinite(m0_lo) ||
      !std::isfinite(m0_hi))
    throw std::invalid_argument("mtr grid: the LP route requires a bounded outcome support");
  if (!(m1_lo <= m1_hi) || !(m0_lo <= m0_hi))
    throw std::invalid_argument("mtr grid: box lo exceeds hi");
}

int snap_to_grid(double vstar, const MtrGrid& grid) {
  const int g = static_cast<int>(std::lround(vstar * grid.grid_g - 0.5));
  return std::clamp(g, 0, grid.grid_g - 1);
}

LpProblem build_lp(const std::vector<LpPairSpec>& pairs, const MtrGrid& grid, double vstar,
                   LpSense sense, std::optional<double> lipschitz_b) {
  grid.validate();
  const int g_n = grid.grid_g;
  const double dv = grid.dv();

  LpProblem lp;
  lp.sense = sense;
  lp.objective.assign(2 * g_n, 0.0);
  lp.var_lo.resize(2 * g_n);
  lp.var_hi.resize(2 * g_n);
  for (int g = 0; g < g_n; ++g) {
    lp.var_lo[g] = grid.m1_lo;
    lp.var_hi[g] = grid.m1_hi;
    lp.var_lo[g_n + g] = grid.m0_lo;
    lp.var_hi[g_n + g] = grid.m0_hi;
  }

  // Dirac objective: the target functional m1(v*) - m0(v*) has no exact
  // discrete counterpart, so v* snaps to the nearest cell center.
  const int g_star = snap_to_grid(vstar, grid);
  lp.objective[g_star] = 1.0;
  lp.objective[g_n + g_star] = -1.0;

  // Midpoint-rule moment row per pair; the window indicator is evaluated at
  // cell centers so no cell is ever half-counted.
  for (const auto& pair : pairs) {
    if (!(pair.p_lo < pair.p_hi))
      throw std::invalid_argument("build_lp: each pair needs p_lo < p_hi");
    std::vector<double> coeffs(2 * g_n, 0.0);
    for (int g = 0; g < g_n; ++g) {
      const double c = grid.center(g);
      if (c > pair.p_lo && c < pair.p_hi) {
        coeffs[g] = dv;
        coeffs[g_n + g] = -dv;
      }
    }
    lp.rows.push_back(LpRow::equality(std::move(coeffs), pair.delta_y, pair.slack));
  }

  if (lipschitz_b) {
    const double cap = *lipschitz_b * dv;
    for (int arm = 0; arm < 2; ++arm) {
      const int base = arm == 0 ? 0 : g_n;
      for (int g = 0; g + 1 < g_n; ++g) {
        std::vector<double> coeffs(2 * g_n, 0.0);
        coeffs[base + g + 1] = 1.0;
        coeffs[base + g] = -1.0;
        lp.rows.push_back(LpRow{std::move(coeffs), -cap, cap});
      }
    }
  }
  return lp;
}

namespace {

// Candidate grid for one propensity score: p_grid_n evenly spaced points over
// [lo, hi], or the single midpoint when the interval is degenerate.
std::vector<double> candidate_points(double lo, double hi, int p_grid_n) {
  if (p_grid_n <= 1 || hi - lo <= 0.0) return {0.5 * (lo + hi)};
  std::vector<double> pts(p_grid_n);
  for (int i = 0; i < p_grid_n; ++i)
    pts[i] = lo + (hi - lo) * static_cast<double>(i) / (p_grid_n - 1);
  return pts;
}

}  // namespace

LpEnvelope lp_mte_bounds(const MomentTable& moments, const PropensityBounds& pbounds,
                         const MtrGrid& grid, double vstar, int p_grid_n,
                         std::optional<double> lipschitz_b,
                         const std::vector<double>& pair_slacks) {
  if (p_grid_n < 1) throw std::invalid_argument("lp_mte_bounds: p_grid_n must be >= 1");
  const int k = moments.size();
  const auto pairs = all_pairs(k);
  if (pair_slacks.size() != pairs.size())
    throw std::invalid_argument("lp_mte_bounds: one slack per ordered pair required");

  std::vector<std::vector<double>> axes(k);
  for (int z = 0; z < k; ++z) axes[z] = candidate_points(pbounds.p_lo[z], pbounds.p_hi[z], p_grid_n);

  LpEnvelope env;
  env.interval = {kInf, -kInf};

  // Walk the candidate product grid in lexicographic order; the envelope
  // accumulation is order-independent but the fixed order keeps reruns
  // bit-identical.
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    ++env.candidates;
    std::vector<double> p(k);
    for (int z = 0; z < k; ++z) p[z] = axes[z][idx[z]];

    bool admissible = true;
    for (std::size_t q = 0; q < pairs.size() && admissible; ++q) {
      const auto [hi, lo] = pairs[q];
      const double dp = p[hi] - p[lo];
      // the true ordering makes every pairwise difference strictly positive
      admissible = dp > 0.0 && dp >= pbounds.dp_lo(hi, lo) - 1e-12 &&
                   dp <= pbounds.dp_hi(hi, lo) + 1e-12;
    }

    if (admissible) {
      std::vector<LpPairSpec> specs;
      specs.reserve(pairs.size());
      for (std::size_t q = 0; q < pairs.size(); ++q) {
        const auto [hi, lo] = pairs[q];
        const PairDeltas d = pair_deltas(moments, hi, lo);
        specs.push_back({d.delta_y, p[lo], p[hi], pair_slacks[q]});
      }
      const LpSolution lo_sol =
          solve_lp(build_lp(specs, grid, vstar, LpSense::minimize, lipschitz_b));
      const LpSolution hi_sol =
          solve_lp(build_lp(specs, grid, vstar, LpSense::maximize, lipschitz_b));
      if (lo_sol.status == LpStatus::optimal && hi_sol.status == LpStatus::optimal) {
        ++env.feasible;
        env.interval.lo = std::min(env.interval.lo, lo_sol.value);
        env.interval.hi = std::max(env.interval.hi, hi_sol.value);
      }
    }

    int z = k - 1;
    while (z >= 0 && ++idx[z] == axes[z].size()) {
      idx[z] = 0;
      --z;
    }
    if (z < 0) break;
  }
  return env;
}

}  // namespace mtebounds
