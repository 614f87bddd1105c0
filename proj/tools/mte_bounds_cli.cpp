#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtebounds/runner.hpp"
#include "mtebounds/version.hpp"

namespace {

std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw CLI::ValidationError(flag, "empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial-identification bounds for marginal treatment effects with a discrete "
               "instrument and a possibly misreported binary treatment"};
  app.set_version_flag("--version", mtebounds::kVersion);

  mtebounds::RunConfig config;
  std::string mode = "analytic";
  std::string alpha_list = "0";
  std::string b_list = "1";
  std::string variant = "smooth";
  std::string support;
  std::string z_order;
  std::string mean_rule = "trapezoid";
  double lp_lipschitz = -1.0;
  double lp_slack = -1.0;

  app.add_option("--mode", mode, "analytic | lp | simulate | ci")->capture_default_str();
  app.add_option("--input", config.input_path, "input CSV with header y,dstar,z");
  app.add_option("--z-order", z_order,
                 "comma-separated instrument labels in ascending propensity order");
  app.add_option("--alpha", alpha_list, "misreporting level, or comma list for a sweep")
      ->capture_default_str();
  app.add_option("--b", b_list, "smoothness constant, or comma list for a sweep")
      ->capture_default_str();
  app.add_option("--variant", variant, "smooth | monotone")->capture_default_str();
  app.add_flag("--tch", config.tch, "impose treatment-cannot-hurt (effect <= 0)");
  app.add_option("--support", support, "outcome support lo,hi (both arms)");
  app.add_option("--grid-n", config.grid_n, "v* grid points")->capture_default_str();
  app.add_option("--level", config.level, "confidence level for --mode ci")
      ->capture_default_str();
  app.add_option("--boot-B", config.boot_b, "bootstrap replicates for --mode ci")
      ->capture_default_str();
  app.add_option("--seed", config.seed, "RNG seed")->capture_default_str();
  app.add_option("--mean-rule", mean_rule, "trapezoid | plain grid averaging")
      ->capture_default_str();
  app.add_option("--out-dir", config.out_dir, "output directory")->capture_default_str();
  app.add_flag("--svg", config.svg, "also emit bounds.svg");

  app.add_option("--p-grid-n", config.p_grid_n, "lp mode: grid points per propensity interval")
      ->capture_default_str();
  app.add_option("--lp-grid-g", config.lp_grid_g, "lp mode: response grid cells")
      ->capture_default_str();
  app.add_option("--lp-lipschitz", lp_lipschitz, "lp mode: add Lipschitz rows at this constant");
  app.add_option("--lp-slack", lp_slack,
                 "lp mode: moment-row slack (default: 2 standard errors of delta_y)");

  app.add_option("--dgp", config.dgp_preset,
                 "simulate mode: preset demo-onesided | demo-flip | demo-flip3")
      ->capture_default_str();
  app.add_option("--dgp-json", config.dgp_json, "simulate mode: DGP spec file (overrides --dgp)");
  app.add_option("--n", config.sim_n, "simulate mode: rows to draw")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (mode == "analytic")
      config.mode = mtebounds::RunMode::analytic;
    else if (mode == "lp")
      config.mode = mtebounds::RunMode::lp;
    else if (mode == "simulate")
      config.mode = mtebounds::RunMode::simulate;
    else if (mode == "ci")
      config.mode = mtebounds::RunMode::ci;
    else
      throw std::invalid_argument("unknown --mode '" + mode + "'");

    if (variant == "smooth")
      config.variant = mtebounds::Variant::smooth;
    else if (variant == "monotone")
      config.variant = mtebounds::Variant::smooth_monotone;
    else
      throw std::invalid_argument("unknown --variant '" + variant + "'");

    if (mean_rule == "trapezoid")
      config.mean_rule = mtebounds::MeanRule::trapezoid;
    else if (mean_rule == "plain")
      config.mean_rule = mtebounds::MeanRule::plain;
    else
      throw std::invalid_argument("unknown --mean-rule '" + mean_rule + "'");

    config.alphas = parse_double_list(alpha_list, "--alpha");
    config.bs = parse_double_list(b_list, "--b");
    if (!z_order.empty()) {
      config.z_order.clear();
      std::stringstream ss(z_order);
      std::string item;
      while (std::getline(ss, item, ',')) config.z_order.push_back(item);
    }
    if (!support.empty()) {
      const auto vals = parse_double_list(support, "--support");
      if (vals.size() != 2) throw std::invalid_argument("--support expects lo,hi");
      config.support = {vals[0], vals[1]};
    }
    if (lp_lipschitz >= 0.0) config.lp_lipschitz_b = lp_lipschitz;
    if (lp_slack >= 0.0) config.lp_slack = lp_slack;

    const mtebounds::RunResult result = mtebounds::run(config);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& a : result.artifacts) std::cout << "wrote " << a << '\n';
    if (result.exit_code == mtebounds::kExitEmptySet)
      std::cerr << "identified set is empty: the data reject the maintained assumptions at "
                   "these (alpha, b) settings\n";
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return mtebounds::kExitInputError;
  }
}
