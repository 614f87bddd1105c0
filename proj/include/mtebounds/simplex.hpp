#pragma once

#include <string>
#include <vector>

namespace mtebounds {

enum class LpSense { minimize, maximize };
enum class LpStatus { optimal, infeasible, unbounded };

/// One ranged constraint lo <= coeffs . x <= hi. An equality row with slack
/// tolerance tau is the pair rhs - tau <= a.x <= rhs + tau.
struct LpRow {
  std::vector<double> coeffs;  // dense over the structural variables
  double lo, hi;

  static LpRow equality(std::vector<double> coeffs, double rhs, double slack_tol);
};

/// A small dense LP over box-bounded variables. Every box must be finite: the
/// grid discretization of the treatment responses requires a bounded outcome
/// support.
struct LpProblem {
  LpSense sense = LpSense::maximize;
  std::vector<double> objective;
  std::vector<LpRow> rows;
  std::vector<double> var_lo, var_hi;

  std::size_t num_vars() const { return objective.size(); }
  void validate() const;
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  std::vector<double> x;  // structural variables only
};

/// Two-phase simplex on bounded variables with Bland's pivoting rule, so the
/// solve terminates and identical inputs give bit-identical outputs.
LpSolution solve_lp(const LpProblem& problem);

}  // namespace mtebounds
