#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtebounds/analytic.hpp"
#include "mtebounds/interval.hpp"

namespace mtebounds {

enum class RunMode { analytic, lp, simulate, ci };

/// Everything one invocation needs; echoed verbatim into the JSON artifact so
/// every number in the output can be traced back to its inputs.
struct RunConfig {
  RunMode mode = RunMode::analytic;

  std::string input_path;
  std::vector<std::string> z_order;
  std::vector<double> alphas{0.0};
  std::vector<double> bs{1.0};
  Variant variant = Variant::smooth;
  bool tch = false;
  std::optional<std::pair<double, double>> support;  // common outcome support
  int grid_n = 401;
  MeanRule mean_rule = MeanRule::trapezoid;

  double level = 0.95;
  int boot_b = 200;
  std::uint64_t seed = 12345;

  // lp mode
  int p_grid_n = 21;
  int lp_grid_g = 200;
  std::optional<double> lp_lipschitz_b;
  std::optional<double> lp_slack;  // default: 2 standard errors of delta_y per pair

  // simulate mode
  std::string dgp_preset = "demo-flip";
  std::string dgp_json;  // overrides the preset when set
  std::size_t sim_n = 10000;

  std::string out_dir = ".";
  bool svg = false;

  void validate() const;
};

// Exit codes form a stable contract: 0 success, 1 input error, 2 when the
// identified set came out empty (artifacts are still written).
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitEmptySet = 2;

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::string> artifacts;
  std::vector<std::string> warnings;
};

RunResult run(const RunConfig& config);

}  // namespace mtebounds
