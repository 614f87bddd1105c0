#include "mtebounds/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "mtebounds/inference.hpp"
#include "mtebounds/io.hpp"
#include "mtebounds/lp.hpp"
#include "mtebounds/simulation.hpp"
#include "mtebounds/svg.hpp"
#include "mtebounds/version.hpp"

namespace mtebounds {

namespace fs = std::filesystem;
using nlohmann::json;

void RunConfig::validate() const {
  if (alphas.empty() || bs.empty())
    throw std::invalid_argument("config: alpha and b sweep lists must be nonempty");
  for (double a : alphas)
    if (!(a >= 0.0 && a < 0.5)) throw std::invalid_argument("config: alpha must lie in [0, 0.5)");
  for (double b : bs)
    if (!(b >= 0.0)) throw std::invalid_argument("config: b must be >= 0");
  if (grid_n < 3) throw std::invalid_argument("config: grid-n must be >= 3");
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("config: level must lie strictly in (0,1)");
  if (boot_b < 2) throw std::invalid_argument("config: boot-B must be >= 2");
  if (support && !(support->first <= support->second))
    throw std::invalid_argument("config: support lo exceeds hi");
  if (mode != RunMode::simulate) {
    if (input_path.empty()) throw std::invalid_argument("config: --input is required");
    if (z_order.size() < 2)
      throw std::invalid_argument("config: --z-order needs at least 2 labels");
  }
  if (mode == RunMode::lp) {
    if (!support) throw std::invalid_argument("config: lp mode requires a bounded --support");
    if (p_grid_n < 1) throw std::invalid_argument("config: p-grid-n must be >= 1");
    if (lp_grid_g < 2) throw std::invalid_argument("config: lp-grid-g must be >= 2");
  }
}

namespace {

json json_finite(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? json("inf") : json("-inf");
}

const char* mode_name(RunMode m) {
  switch (m) {
    case RunMode::analytic: return "analytic";
    case RunMode::lp: return "lp";
    case RunMode::simulate: return "simulate";
    case RunMode::ci: return "ci";
  }
  return "?";
}

json config_json(const RunConfig& c) {
  json j;
  j["mode"] = mode_name(c.mode);
  j["input"] = c.input_path;
  j["z_order"] = c.z_order;
  j["alpha"] = c.alphas;
  j["b"] = c.bs;
  j["variant"] = c.variant == Variant::smooth ? "smooth" : "monotone";
  j["tch"] = c.tch;
  if (c.support)
    j["support"] = {c.support->first, c.support->second};
  else
    j["support"] = nullptr;
  j["grid_n"] = c.grid_n;
  j["mean_rule"] = c.mean_rule == MeanRule::trapezoid ? "trapezoid" : "plain";
  j["level"] = c.level;
  j["boot_b"] = c.boot_b;
  j["seed"] = c.seed;
  j["p_grid_n"] = c.p_grid_n;
  j["lp_grid_g"] = c.lp_grid_g;
  j["lp_lipschitz_b"] = c.lp_lipschitz_b ? json(*c.lp_lipschitz_b) : json(nullptr);
  j["lp_slack"] = c.lp_slack ? json(*c.lp_slack) : json(nullptr);
  j["out_dir"] = c.out_dir;
  return j;
}

DgpSpec dgp_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dgp spec '" + path + "'");
  json j = json::parse(in);
  DgpSpec s;
  s.m1 = PiecewiseLinear(j.at("m1").at("x").get<std::vector<double>>(),
                         j.at("m1").at("y").get<std::vector<double>>());
  s.m0 = PiecewiseLinear(j.at("m0").at("x").get<std::vector<double>>(),
                         j.at("m0").at("y").get<std::vector<double>>());
  s.z_labels = j.at("z_labels").get<std::vector<std::string>>();
  s.z_probs = j.at("z_probs").get<std::vector<double>>();
  s.p_of_z = j.at("p_of_z").get<std::vector<double>>();
  const std::string mode = j.value("misreport", "none");
  if (mode == "none")
    s.misreport = MisreportMode::none;
  else if (mode == "onesided")
    s.misreport = MisreportMode::verbatim_onesided;
  else if (mode == "flip")
    s.misreport = MisreportMode::full_flip;
  else
    throw std::runtime_error("dgp spec: misreport must be none|onesided|flip");
  s.eps_cut = j.value("eps_cut", 0.0);
  s.noise_sd = j.value("noise_sd", 0.0);
  s.seed = j.value("seed", 0ULL);
  s.validate();
  return s;
}

json dgp_json(const DgpSpec& s) {
  json j;
  j["m1"] = {{"x", s.m1.knots_x()}, {"y", s.m1.knots_y()}};
  j["m0"] = {{"x", s.m0.knots_x()}, {"y", s.m0.knots_y()}};
  j["z_labels"] = s.z_labels;
  j["z_probs"] = s.z_probs;
  j["p_of_z"] = s.p_of_z;
  j["misreport"] = s.misreport == MisreportMode::none ? "none"
                   : s.misreport == MisreportMode::verbatim_onesided ? "onesided"
                                                                     : "flip";
  j["eps_cut"] = s.eps_cut;
  j["noise_sd"] = s.noise_sd;
  j["seed"] = s.seed;
  return j;
}

RunResult run_simulate(const RunConfig& config) {
  const DgpSpec spec =
      config.dgp_json.empty() ? dgp::preset(config.dgp_preset) : dgp_from_json_file(config.dgp_json);
  const Sample sample = simulate(spec, config.sim_n, config.seed);
  const InstrumentOrdering ordering = spec.ordering();

  RunResult result;
  const fs::path dir(config.out_dir);
  const std::string csv = (dir / "sample.csv").string();
  write_sample_csv(csv, sample, ordering);
  result.artifacts.push_back(csv);

  json j;
  j["schema"] = kOutputSchema;
  j["version"] = kVersion;
  j["dgp"] = dgp_json(spec);
  j["n"] = config.sim_n;
  j["seed"] = config.seed;
  j["true_ate"] = true_ate(spec);
  j["lipschitz"] = spec.lipschitz();
  const std::string meta = (dir / "dgp.json").string();
  std::ofstream(meta) << j.dump(2) << '\n';
  result.artifacts.push_back(meta);
  return result;
}

struct CellOutput {
  double alpha, b;
  IntervalCurve curve;
  Interval ate;
  json extra;  // per-mode additions (CI fields, LP diagnostics)
};

// Default moment-row slack for sampled data: two standard errors of delta_y,
// from the within-stratum outcome variances.
std::vector<double> default_lp_slacks(const Sample& sample, const MomentTable& moments) {
  const int k = moments.size();
  std::vector<double> mean(k, 0.0), ss(k, 0.0);
  std::vector<std::int64_t> n(k, 0);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    ++n[sample.z[i]];
    mean[sample.z[i]] += sample.y[i];
  }
  for (int z = 0; z < k; ++z) mean[z] /= static_cast<double>(n[z]);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double d = sample.y[i] - mean[sample.z[i]];
    ss[sample.z[i]] += d * d;
  }
  std::vector<double> var(k, 0.0);
  for (int z = 0; z < k; ++z)
    var[z] = n[z] > 1 ? ss[z] / static_cast<double>(n[z] - 1) : 0.0;

  std::vector<double> slacks;
  for (auto [hi, lo] : all_pairs(k)) {
    const double se = std::sqrt(var[hi] / static_cast<double>(n[hi]) +
                                var[lo] / static_cast<double>(n[lo]));
    slacks.push_back(2.0 * se);
  }
  return slacks;
}

}  // namespace

RunResult run(const RunConfig& config) {
  config.validate();
  fs::create_directories(config.out_dir);
  if (config.mode == RunMode::simulate) return run_simulate(config);

  RunResult result;
  const InstrumentOrdering ordering(config.z_order);
  const Sample sample = read_sample_csv(config.input_path, ordering);
  const MomentTable moments = estimate_moments(sample, ordering);
  result.warnings = moments.warnings;
  for (auto [hi, lo] : all_pairs(moments.size())) {
    if (moments.pdstar[hi] == moments.pdstar[lo])
      result.warnings.push_back("observed treatment shares tie for '" + moments.labels[lo] +
                                "' and '" + moments.labels[hi] +
                                "'; the difference bounds start at zero and the bounds may be "
                                "vacuous");
  }

  BoundsConfig base;
  base.variant = config.variant;
  base.effect_sign = config.tch ? SignRestriction::nonpositive : SignRestriction::none;
  if (config.support)
    base.y_support = OutcomeSupport::common(config.support->first, config.support->second);
  base.grid_n = config.grid_n;

  const auto pairs = all_pairs(moments.size());
  std::vector<CellOutput> cells;
  for (double alpha : config.alphas) {
    for (double b : config.bs) {
      BoundsConfig cfg = base;
      cfg.alpha = alpha;
      cfg.b = b;
      const PropensityBounds pbounds = compute_propensity_bounds(moments, MisreportLevel(alpha));

      CellOutput cell;
      cell.alpha = alpha;
      cell.b = b;
      if (config.mode == RunMode::lp) {
        MtrGrid grid;
        grid.grid_g = config.lp_grid_g;
        grid.m1_lo = grid.m0_lo = config.support->first;
        grid.m1_hi = grid.m0_hi = config.support->second;
        std::vector<double> slacks = config.lp_slack
                                         ? std::vector<double>(pairs.size(), *config.lp_slack)
                                         : default_lp_slacks(sample, moments);
        cell.curve.vstars = uniform_grid(config.grid_n);
        int feasible = 0, candidates = 0;
        for (double v : cell.curve.vstars) {
          const LpEnvelope env = lp_mte_bounds(moments, pbounds, grid, v, config.p_grid_n,
                                               config.lp_lipschitz_b, slacks);
          cell.curve.intervals.push_back(env.interval);
          cell.curve.cases.push_back(SignCase::ambiguous);
          feasible = env.feasible;
          candidates = env.candidates;
        }
        cell.extra["lp"] = {{"candidates", candidates},
                            {"feasible", feasible},
                            {"grid_g", grid.grid_g},
                            {"slacks", slacks}};
      } else {
        cell.curve = mte_curve(moments, pbounds, cfg, pairs);
      }
      cell.ate = ate_bounds_numeric(cell.curve, config.mean_rule);

      if (config.mode == RunMode::ci) {
        auto statistic = [&](const Sample& s) {
          const MomentTable m = estimate_moments(s, ordering, /*min_stratum_warn=*/0);
          const PropensityBounds pb = compute_propensity_bounds(m, MisreportLevel(alpha));
          const Interval ate = ate_bounds_numeric(mte_curve(m, pb, cfg, pairs), config.mean_rule);
          return std::vector<double>{ate.lo, ate.hi};
        };
        const std::vector<double> se = bootstrap_sds(sample, statistic, config.boot_b, config.seed);
        const CiResult ci = set_ci(cell.ate.lo, cell.ate.hi, se[0], se[1],
                                   static_cast<std::int64_t>(sample.size()), config.level,
                                   config.boot_b, config.seed);
        cell.extra["ci"] = {{"level", ci.level},
                            {"lo", json_finite(ci.ci_lo)},
                            {"hi", json_finite(ci.ci_hi)},
                            {"se_lo", ci.se_lo},
                            {"se_hi", ci.se_hi},
                            {"replicates", ci.replicates},
                            {"seed", ci.seed}};
      }
      cells.push_back(std::move(cell));
    }
  }

  // merged bounds table, cells in sweep order
  std::vector<BoundsCsvRow> rows;
  for (const auto& cell : cells) {
    for (std::size_t i = 0; i < cell.curve.size(); ++i) {
      const auto& iv = cell.curve.intervals[i];
      rows.push_back({cell.alpha, cell.b, cell.curve.vstars[i], iv.lo, iv.hi,
                      iv.empty() ? "empty" : to_string(cell.curve.cases[i])});
    }
  }
  const fs::path dir(config.out_dir);
  const std::string csv_path = (dir / "mte_bounds.csv").string();
  write_bounds_csv(csv_path, rows);
  result.artifacts.push_back(csv_path);

  bool any_empty = false;
  json jcells = json::array();
  for (const auto& cell : cells) {
    json jc;
    jc["alpha"] = cell.alpha;
    jc["b"] = cell.b;
    jc["ate_lb"] = json_finite(cell.ate.lo);
    jc["ate_ub"] = json_finite(cell.ate.hi);
    jc["empty"] = cell.ate.empty();
    any_empty = any_empty || cell.ate.empty();
    for (auto& [key, value] : cell.extra.items()) jc[key] = value;
    jcells.push_back(std::move(jc));
  }

  json j;
  j["schema"] = kOutputSchema;
  j["version"] = kVersion;
  j["config"] = config_json(config);
  json jm;
  jm["labels"] = moments.labels;
  jm["ey"] = moments.ey;
  jm["pdstar"] = moments.pdstar;
  jm["n"] = moments.n;
  j["provenance"] = {{"input", config.input_path},
                     {"rows", sample.size()},
                     {"moments", jm},
                     {"warnings", result.warnings}};
  j["cells"] = jcells;
  const std::string json_path = (dir / "ate_bounds.json").string();
  std::ofstream(json_path) << j.dump(2) << '\n';
  result.artifacts.push_back(json_path);

  if (config.svg) {
    std::vector<SvgBand> bands;
    for (const auto& cell : cells) {
      char label[64];
      std::snprintf(label, sizeof label, "alpha=%g b=%g", cell.alpha, cell.b);
      bands.push_back({label, cell.curve});
    }
    double y_lo = -1.0, y_hi = 1.0;
    if (config.support) {
      y_lo = config.support->first - config.support->second;
      y_hi = config.support->second - config.support->first;
    }
    if (config.tch) y_hi = 0.0;
    if (!(y_lo < y_hi)) y_lo = y_hi - 1.0;
    const std::string svg_path = (dir / "bounds.svg").string();
    write_bounds_svg(svg_path, bands, y_lo, y_hi);
    result.artifacts.push_back(svg_path);
  }

  result.exit_code = any_empty ? kExitEmptySet : kExitOk;
  return result;
}

}  // namespace mtebounds
