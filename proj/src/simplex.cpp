#include "mtebounds/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mtebounds {

namespace {
constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-7;
}  // namespace

LpRow LpRow::equality(std::vector<double> coeffs, double rhs, double slack_tol) {
  if (!(slack_tol >= 0.0)) throw std::invalid_argument("equality row: slack_tol must be >= 0");
  return LpRow{std::move(coeffs), rhs - slack_tol, rhs + slack_tol};
}

void LpProblem::validate() const {
  const std::size_t n = num_vars();
  if (n == 0) throw std::invalid_argument("lp: no variables");
  if (var_lo.size() != n || var_hi.size() != n)
    throw std::invalid_argument("lp: box bound vectors must match the variable count");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(var_lo[j]) || !std::isfinite(var_hi[j]))
      throw std::invalid_argument("lp: every variable needs finite box bounds");
    if (!(var_lo[j] <= var_hi[j])) throw std::invalid_argument("lp: box lo exceeds hi");
  }
  for (const auto& row : rows) {
    if (row.coeffs.size() != n) throw std::invalid_argument("lp: row width mismatch");
    if (!(row.lo <= row.hi)) throw std::invalid_argument("lp: row range lo exceeds hi");
  }
}

namespace {

// Two-phase primal simplex on bounded variables, dense tableau, Bland's rule.
//
// Internal variable layout: [0, n) structural, [n, n+m) one slack per row
// (a.x + s = row.hi with s in [0, hi-lo]), [n+m, n+2m) one artificial per
// row forming the phase-1 basis. Basic values are recomputed from
// x_B = beta - sum_j T[:,j] * val_j each iteration rather than updated
// incrementally, which keeps round-off from accumulating across pivots.
class BoundedSimplex {
 public:
  explicit BoundedSimplex(const LpProblem& p) : prob_(p) {
    n_ = p.num_vars();
    m_ = p.rows.size();
    total_ = n_ + 2 * m_;
    lo_.assign(total_, 0.0);
    hi_.assign(total_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      lo_[j] = p.var_lo[j];
      hi_[j] = p.var_hi[j];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      lo_[n_ + i] = 0.0;
      hi_[n_ + i] = p.rows[i].hi - p.rows[i].lo;
      lo_[n_ + m_ + i] = 0.0;
      hi_[n_ + m_ + i] = kInfinity;  // artificials only live through phase 1
    }

    // Start with the structural variables at their lower bound, slacks at the
    // bound closer to the residual, and an artificial absorbing the rest.
    at_upper_.assign(total_, false);
    std::vector<double> sigma(m_, 1.0);
    for (std::size_t i = 0; i < m_; ++i) {
      double g = prob_.rows[i].hi;
      for (std::size_t j = 0; j < n_; ++j) g -= prob_.rows[i].coeffs[j] * lo_[j];
      const double span = hi_[n_ + i];
      double s;
      if (g <= 0.0) {
        s = 0.0;
      } else if (g >= span) {
        s = span;
        at_upper_[n_ + i] = true;
      } else {
        s = (g > 0.5 * span) ? span : 0.0;
        at_upper_[n_ + i] = (s == span);
      }
      sigma[i] = (g - s < 0.0) ? -1.0 : 1.0;
    }

    // Tableau rows pre-multiplied by B^{-1} = diag(sigma).
    tab_.assign(m_, std::vector<double>(total_, 0.0));
    beta_.assign(m_, 0.0);
    basis_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = sigma[i] * prob_.rows[i].coeffs[j];
      tab_[i][n_ + i] = sigma[i];
      tab_[i][n_ + m_ + i] = 1.0;
      beta_[i] = sigma[i] * prob_.rows[i].hi;
      basis_[i] = static_cast<int>(n_ + m_ + i);
    }

    // Reduced-cost rows for both phases. Phase 1 maximizes -sum(artificials);
    // its basic costs are -1, so d1_j = sum_i T_ij for non-artificial j.
    cost1_.assign(total_, 0.0);
    for (std::size_t j = 0; j < total_; ++j) {
      if (j >= n_ + m_) continue;  // artificial columns are basic: reduced cost 0
      double acc = 0.0;
      for (std::size_t i = 0; i < m_; ++i) acc += tab_[i][j];
      cost1_[j] = acc;
    }
    cost2_.assign(total_, 0.0);
    const double dir = prob_.sense == LpSense::maximize ? 1.0 : -1.0;
    for (std::size_t j = 0; j < n_; ++j) cost2_[j] = dir * prob_.objective[j];
  }

  LpSolution solve() {
    phase_ = 1;
    if (!iterate()) return {LpStatus::unbounded, 0.0, {}};
    if (infeasibility() > kFeasTol) return {LpStatus::infeasible, 0.0, {}};
    expel_artificials();
    phase_ = 2;
    if (!iterate()) return {LpStatus::unbounded, 0.0, {}};

    LpSolution sol;
    sol.status = LpStatus::optimal;
    const std::vector<double> x = current_x();
    sol.x.assign(x.begin(), x.begin() + n_);
    double value = 0.0;
    for (std::size_t j = 0; j < n_; ++j) value += prob_.objective[j] * sol.x[j];
    sol.value = value;
    return sol;
  }

 private:
  bool is_artificial(std::size_t j) const { return j >= n_ + m_; }

  std::vector<double> current_x() const {
    std::vector<double> x(total_, 0.0);
    std::vector<bool> basic(total_, false);
    for (int b : basis_) basic[b] = true;
    for (std::size_t j = 0; j < total_; ++j)
      if (!basic[j]) x[j] = at_upper_[j] ? hi_[j] : lo_[j];
    for (std::size_t i = 0; i < m_; ++i) {
      double v = beta_[i];
      for (std::size_t j = 0; j < total_; ++j)
        if (!basic[j] && x[j] != 0.0) v -= tab_[i][j] * x[j];
      x[basis_[i]] = v;
    }
    return x;
  }

  double infeasibility() const {
    const std::vector<double> x = current_x();
    double acc = 0.0;
    for (std::size_t j = n_ + m_; j < total_; ++j) acc += std::max(0.0, x[j]);
    return acc;
  }

  // After phase 1, pivot remaining artificials out of the basis where a
  // nonzero non-artificial entry exists; all-zero rows are redundant and the
  // artificial stays pinned at zero.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      std::size_t col = total_;
      for (std::size_t j = 0; j < n_ + m_; ++j) {
        if (std::abs(tab_[i][j]) > 1e-9) {
          col = j;
          break;
        }
      }
      if (col < total_) pivot(i, col);
    }
    for (std::size_t j = n_ + m_; j < total_; ++j) hi_[j] = 0.0;
  }

  bool iterate() {
    const std::vector<double>& cost = phase_ == 1 ? cost1_ : cost2_;
    for (long iter = 0; iter < 200000; ++iter) {
      const std::vector<double> x = current_x();

      // Bland: the lowest-index nonbasic variable with a favorable reduced cost.
      std::vector<bool> basic(total_, false);
      for (int b : basis_) basic[b] = true;
      std::size_t enter = total_;
      double dir = 1.0;
      for (std::size_t j = 0; j < total_; ++j) {
        if (basic[j]) continue;
        if (phase_ == 2 && is_artificial(j)) continue;
        if (hi_[j] == lo_[j]) continue;
        if (!at_upper_[j] && cost[j] > kReducedCostTol) {
          enter = j;
          dir = 1.0;
          break;
        }
        if (at_upper_[j] && cost[j] < -kReducedCostTol) {
          enter = j;
          dir = -1.0;
          break;
        }
      }
      if (enter == total_) return true;  // optimal for this phase

      // Ratio test: the entering variable moves by t in direction dir until a
      // basic variable hits a bound or it reaches its own opposite bound.
      double best_t = kInfinity;
      std::size_t best_row = m_;
      int best_var = -1;
      for (std::size_t i = 0; i < m_; ++i) {
        const double rate = dir * tab_[i][enter];
        const int bv = basis_[i];
        double t;
        if (rate > kPivotTol) {
          t = (x[bv] - lo_[bv]) / rate;
        } else if (rate < -kPivotTol) {
          if (hi_[bv] == kInfinity) continue;
          t = (hi_[bv] - x[bv]) / (-rate);
        } else {
          continue;
        }
        t = std::max(t, 0.0);
        if (t < best_t - 1e-12 || (t < best_t + 1e-12 && (best_var < 0 || bv < best_var))) {
          best_t = t;
          best_row = i;
          best_var = bv;
        }
      }
      const double span = hi_[enter] - lo_[enter];
      if (span <= best_t && std::isfinite(span)) {
        at_upper_[enter] = !at_upper_[enter];  // bound flip, basis unchanged
        continue;
      }
      if (best_row == m_) return false;  // nothing blocks: unbounded

      const double rate = dir * tab_[best_row][enter];
      at_upper_[best_var] = rate < 0.0;  // leaving variable rests at the bound it hit
      pivot(best_row, enter);
    }
    throw std::runtime_error("simplex: iteration limit reached");
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = tab_[row][col];
    if (std::abs(p) < kPivotTol) throw std::runtime_error("simplex: numerically singular pivot");
    const double inv = 1.0 / p;
    for (std::size_t j = 0; j < total_; ++j) tab_[row][j] *= inv;
    beta_[row] *= inv;
    tab_[row][col] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = tab_[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < total_; ++j) tab_[i][j] -= f * tab_[row][j];
      tab_[i][col] = 0.0;
      beta_[i] -= f * beta_[row];
    }
    auto update_cost = [&](std::vector<double>& c) {
      const double f = c[col];
      if (f == 0.0) return;
      for (std::size_t j = 0; j < total_; ++j) c[j] -= f * tab_[row][j];
      c[col] = 0.0;
    };
    update_cost(cost1_);
    update_cost(cost2_);
    basis_[row] = static_cast<int>(col);
  }

  const LpProblem& prob_;
  std::size_t n_ = 0, m_ = 0, total_ = 0;
  int phase_ = 1;
  std::vector<double> lo_, hi_;
  std::vector<bool> at_upper_;
  std::vector<std::vector<double>> tab_;
  std::vector<double> beta_;
  std::vector<int> basis_;
  std::vector<double> cost1_, cost2_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  problem.validate();
  if (problem.rows.empty()) {
    // pure box problem: each variable sits at whichever bound the sense favors
    LpSolution sol;
    sol.status = LpStatus::optimal;
    sol.x.resize(problem.num_vars());
    double value = 0.0;
    const bool maximize = problem.sense == LpSense::maximize;
    for (std::size_t j = 0; j < problem.num_vars(); ++j) {
      const double c = problem.objective[j];
      const bool up = maximize ? c > 0.0 : c < 0.0;
      sol.x[j] = up ? problem.var_hi[j] : problem.var_lo[j];
      value += c * sol.x[j];
    }
    sol.value = value;
    return sol;
  }
  BoundedSimplex solver(problem);
  return solver.solve();
}

}  // namespace mtebounds
