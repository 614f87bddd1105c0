#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mtebounds/analytic.hpp"
#include "mtebounds/inference.hpp"
#include "mtebounds/io.hpp"
#include "mtebounds/lp.hpp"
#include "mtebounds/moments.hpp"
#include "mtebounds/propensity.hpp"
#include "mtebounds/runner.hpp"
#include "mtebounds/simulation.hpp"
#include "mtebounds/version.hpp"

namespace py = pybind11;
using namespace mtebounds;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Partial-identification bounds for marginal treatment effects with a discrete "
            "instrument and a possibly misreported binary treatment";
  m.attr("__version__") = kVersion;

  py::class_<Interval>(m, "Interval")
      .def(py::init<>())
      .def(py::init([](double lo, double hi) { return Interval{lo, hi}; }), py::arg("lo"),
           py::arg("hi"))
      .def_readwrite("lo", &Interval::lo)
      .def_readwrite("hi", &Interval::hi)
      .def("empty", &Interval::empty)
      .def("contains", &Interval::contains)
      .def("width", &Interval::width)
      .def("__repr__", [](const Interval& iv) {
        return "Interval(" + std::to_string(iv.lo) + ", " + std::to_string(iv.hi) + ")";
      });

  py::enum_<Variant>(m, "Variant")
      .value("smooth", Variant::smooth)
      .value("smooth_monotone", Variant::smooth_monotone);

  py::enum_<SignRestriction>(m, "SignRestriction")
      .value("none", SignRestriction::none)
      .value("nonpositive", SignRestriction::nonpositive)
      .value("nonnegative", SignRestriction::nonnegative);

  py::enum_<SignCase>(m, "SignCase")
      .value("positive", SignCase::positive)
      .value("negative", SignCase::negative)
      .value("ambiguous", SignCase::ambiguous)
      .value("conflict", SignCase::conflict);

  py::enum_<MeanRule>(m, "MeanRule")
      .value("trapezoid", MeanRule::trapezoid)
      .value("plain", MeanRule::plain);

  py::class_<OutcomeSupport>(m, "OutcomeSupport")
      .def(py::init([](double y1_lo, double y1_hi, double y0_lo, double y0_hi) {
             return OutcomeSupport{y1_lo, y1_hi, y0_lo, y0_hi};
           }),
           py::arg("y1_lo"), py::arg("y1_hi"), py::arg("y0_lo"), py::arg("y0_hi"))
      .def_static("common", &OutcomeSupport::common, py::arg("lo"), py::arg("hi"))
      .def_readwrite("y1_lo", &OutcomeSupport::y1_lo)
      .def_readwrite("y1_hi", &OutcomeSupport::y1_hi)
      .def_readwrite("y0_lo", &OutcomeSupport::y0_lo)
      .def_readwrite("y0_hi", &OutcomeSupport::y0_hi);

  py::class_<BoundsConfig>(m, "BoundsConfig")
      .def(py::init<>())
      .def_readwrite("b", &BoundsConfig::b)
      .def_readwrite("alpha", &BoundsConfig::alpha)
      .def_readwrite("variant", &BoundsConfig::variant)
      .def_readwrite("effect_sign", &BoundsConfig::effect_sign)
      .def_readwrite("y_support", &BoundsConfig::y_support)
      .def_readwrite("grid_n", &BoundsConfig::grid_n);

  py::class_<IntervalCurve>(m, "IntervalCurve")
      .def_readonly("vstars", &IntervalCurve::vstars)
      .def_readonly("intervals", &IntervalCurve::intervals)
      .def_readonly("cases", &IntervalCurve::cases)
      .def("__len__", &IntervalCurve::size);

  py::class_<InstrumentOrdering>(m, "InstrumentOrdering")
      .def(py::init<std::vector<std::string>>(), py::arg("labels"))
      .def("index_of", &InstrumentOrdering::index_of)
      .def_property_readonly("labels", &InstrumentOrdering::labels)
      .def("__len__", &InstrumentOrdering::size);

  py::class_<Sample>(m, "Sample")
      .def_readonly("y", &Sample::y)
      .def_readonly("dstar", &Sample::dstar)
      .def_readonly("z", &Sample::z)
      .def("__len__", &Sample::size);

  py::class_<MomentTable>(m, "MomentTable")
      .def_readonly("labels", &MomentTable::labels)
      .def_readonly("ey", &MomentTable::ey)
      .def_readonly("pdstar", &MomentTable::pdstar)
      .def_readonly("n", &MomentTable::n)
      .def_readonly("warnings", &MomentTable::warnings);

  py::class_<PairDeltas>(m, "PairDeltas")
      .def_readonly("delta_y", &PairDeltas::delta_y)
      .def_readonly("delta_dstar", &PairDeltas::delta_dstar);

  py::class_<PropensityBounds>(m, "PropensityBounds")
      .def_readonly("p_lo", &PropensityBounds::p_lo)
      .def_readonly("p_hi", &PropensityBounds::p_hi)
      .def("dp_lo", &PropensityBounds::dp_lo, py::arg("hi"), py::arg("lo"))
      .def("dp_hi", &PropensityBounds::dp_hi, py::arg("hi"), py::arg("lo"));

  py::class_<PairInputs>(m, "PairInputs")
      .def(py::init([](double delta_y, double dp_lo, double dp_hi, double win_lo, double win_hi) {
             return PairInputs{delta_y, dp_lo, dp_hi, win_lo, win_hi};
           }),
           py::arg("delta_y"), py::arg("dp_lo"), py::arg("dp_hi"), py::arg("win_lo"),
           py::arg("win_hi"))
      .def_readwrite("delta_y", &PairInputs::delta_y)
      .def_readwrite("dp_lo", &PairInputs::dp_lo)
      .def_readwrite("dp_hi", &PairInputs::dp_hi)
      .def_readwrite("win_lo", &PairInputs::win_lo)
      .def_readwrite("win_hi", &PairInputs::win_hi);

  py::class_<MteInterval>(m, "MteInterval")
      .def_readonly("interval", &MteInterval::interval)
      .def_readonly("sign_case", &MteInterval::sign_case);

  m.def("make_sample", &make_sample, py::arg("y"), py::arg("dstar"), py::arg("z_labels"),
        py::arg("ordering"));
  m.def("estimate_moments", &estimate_moments, py::arg("sample"), py::arg("ordering"),
        py::arg("min_stratum_warn") = 30);
  m.def("pair_deltas", &pair_deltas, py::arg("moments"), py::arg("z_hi"), py::arg("z_lo"));
  m.def("all_pairs", &all_pairs, py::arg("k"));

  m.def(
      "propensity_interval",
      [](double pdstar, double alpha) { return propensity_interval(pdstar, MisreportLevel(alpha)); },
      py::arg("pdstar"), py::arg("alpha"));
  m.def(
      "delta_p_interval",
      [](double dd, double alpha) { return delta_p_interval(dd, MisreportLevel(alpha)); },
      py::arg("delta_dstar"), py::arg("alpha"));
  m.def(
      "compute_propensity_bounds",
      [](const MomentTable& mt, double alpha) {
        return compute_propensity_bounds(mt, MisreportLevel(alpha));
      },
      py::arg("moments"), py::arg("alpha"));

  m.def("abs_moment_integral", &abs_moment_integral, py::arg("p_lo"), py::arg("p_hi"),
        py::arg("vstar"));
  m.def("mte_bounds_pair", &mte_bounds_pair, py::arg("inputs"), py::arg("b"), py::arg("vstar"),
        py::arg("variant") = Variant::smooth, py::arg("restriction") = SignRestriction::none);
  m.def("mte_bounds_multi", &mte_bounds_multi, py::arg("pairs"), py::arg("b"), py::arg("vstar"),
        py::arg("variant") = Variant::smooth, py::arg("restriction") = SignRestriction::none);
  m.def("clamp", &clamp, py::arg("interval"), py::arg("config"));
  m.def("mte_curve", &mte_curve, py::arg("moments"), py::arg("pbounds"), py::arg("config"),
        py::arg("pairs"));
  m.def("analytic_curve", &analytic_curve, py::arg("moments"), py::arg("config"));
  m.def("late_bounds", &late_bounds, py::arg("delta_y"), py::arg("dp"), py::arg("b"));
  m.def("ate_upper_analytic", &ate_upper_analytic, py::arg("delta_y"), py::arg("p1"),
        py::arg("p0"), py::arg("b"));
  m.def("ate_lower_analytic", &ate_lower_analytic, py::arg("delta_y"), py::arg("p1"),
        py::arg("p0"), py::arg("b"));
  m.def("ate_lower_analytic_tch", &ate_lower_analytic_tch, py::arg("delta_y"), py::arg("p1u"),
        py::arg("p0l"), py::arg("dp_lo"), py::arg("b"));
  m.def("ate_bounds_numeric", &ate_bounds_numeric, py::arg("curve"),
        py::arg("rule") = MeanRule::trapezoid);
  m.def("b_from_ate", &b_from_ate, py::arg("ate_ref"), py::arg("delta_y"), py::arg("p1"),
        py::arg("p0"));
  m.def("breakdown_b", &breakdown_b, py::arg("delta_y"), py::arg("p1"), py::arg("p0"));
  m.def("b_feasible",
        py::overload_cast<const IntervalCurve&, double, double, double>(&b_feasible),
        py::arg("curve"), py::arg("heldout_delta_y"), py::arg("window_lo"), py::arg("window_hi"));

  // linear-programming route
  py::enum_<LpSense>(m, "LpSense")
      .value("minimize", LpSense::minimize)
      .value("maximize", LpSense::maximize);
  py::enum_<LpStatus>(m, "LpStatus")
      .value("optimal", LpStatus::optimal)
      .value("infeasible", LpStatus::infeasible)
      .value("unbounded", LpStatus::unbounded);
  py::class_<LpRow>(m, "LpRow")
      .def(py::init([](std::vector<double> coeffs, double lo, double hi) {
             return LpRow{std::move(coeffs), lo, hi};
           }),
           py::arg("coeffs"), py::arg("lo"), py::arg("hi"))
      .def_static("equality", &LpRow::equality, py::arg("coeffs"), py::arg("rhs"),
                  py::arg("slack_tol"));
  py::class_<LpProblem>(m, "LpProblem")
      .def(py::init<>())
      .def_readwrite("sense", &LpProblem::sense)
      .def_readwrite("objective", &LpProblem::objective)
      .def_readwrite("rows", &LpProblem::rows)
      .def_readwrite("var_lo", &LpProblem::var_lo)
      .def_readwrite("var_hi", &LpProblem::var_hi);
  py::class_<LpSolution>(m, "LpSolution")
      .def_readonly("status", &LpSolution::status)
      .def_readonly("value", &LpSolution::value)
      .def_readonly("x", &LpSolution::x);
  py::class_<MtrGrid>(m, "MtrGrid")
      .def(py::init<>())
      .def_readwrite("grid_g", &MtrGrid::grid_g)
      .def_readwrite("m1_lo", &MtrGrid::m1_lo)
      .def_readwrite("m1_hi", &MtrGrid::m1_hi)
      .def_readwrite("m0_lo", &MtrGrid::m0_lo)
      .def_readwrite("m0_hi", &MtrGrid::m0_hi);
  py::class_<LpPairSpec>(m, "LpPairSpec")
      .def(py::init([](double delta_y, double p_lo, double p_hi, double slack) {
             return LpPairSpec{delta_y, p_lo, p_hi, slack};
           }),
           py::arg("delta_y"), py::arg("p_lo"), py::arg("p_hi"), py::arg("slack"));
  py::class_<LpEnvelope>(m, "LpEnvelope")
      .def_readonly("interval", &LpEnvelope::interval)
      .def_readonly("candidates", &LpEnvelope::candidates)
      .def_readonly("feasible", &LpEnvelope::feasible);
  m.def("solve_lp", &solve_lp, py::arg("problem"));
  m.def("build_lp", &build_lp, py::arg("pairs"), py::arg("grid"), py::arg("vstar"),
        py::arg("sense"), py::arg("lipschitz_b") = std::nullopt);
  m.def("lp_mte_bounds", &lp_mte_bounds, py::arg("moments"), py::arg("pbounds"), py::arg("grid"),
        py::arg("vstar"), py::arg("p_grid_n"), py::arg("lipschitz_b"), py::arg("pair_slacks"));

  // inference
  py::class_<CiResult>(m, "CiResult")
      .def_readonly("point_lo", &CiResult::point_lo)
      .def_readonly("point_hi", &CiResult::point_hi)
      .def_readonly("ci_lo", &CiResult::ci_lo)
      .def_readonly("ci_hi", &CiResult::ci_hi)
      .def_readonly("se_lo", &CiResult::se_lo)
      .def_readonly("se_hi", &CiResult::se_hi)
      .def_readonly("level", &CiResult::level)
      .def_readonly("replicates", &CiResult::replicates)
      .def_readonly("seed", &CiResult::seed);
  m.def("normal_quantile", &normal_quantile, py::arg("p"));
  m.def("bootstrap_sd", &bootstrap_sd, py::arg("sample"), py::arg("statistic"),
        py::arg("replicates"), py::arg("seed"), py::arg("stratified") = false);
  m.def("set_ci", &set_ci, py::arg("point_lo"), py::arg("point_hi"), py::arg("se_lo"),
        py::arg("se_hi"), py::arg("n"), py::arg("level"), py::arg("replicates") = 0,
        py::arg("seed") = 0);
  m.def("ate_outer_plugin", &ate_outer_plugin, py::arg("moments"), py::arg("alpha"), py::arg("b"),
        py::arg("pair"));

  // simulation
  py::enum_<MisreportMode>(m, "MisreportMode")
      .value("none", MisreportMode::none)
      .value("verbatim_onesided", MisreportMode::verbatim_onesided)
      .value("full_flip", MisreportMode::full_flip);
  py::class_<PiecewiseLinear>(m, "PiecewiseLinear")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("knots_x"),
           py::arg("knots_y"))
      .def_static("affine", &PiecewiseLinear::affine, py::arg("at0"), py::arg("at1"))
      .def("__call__", &PiecewiseLinear::operator())
      .def("integral", &PiecewiseLinear::integral)
      .def("lipschitz", &PiecewiseLinear::lipschitz);
  py::class_<DgpSpec>(m, "DgpSpec")
      .def(py::init<>())
      .def_readwrite("m1", &DgpSpec::m1)
      .def_readwrite("m0", &DgpSpec::m0)
      .def_readwrite("z_labels", &DgpSpec::z_labels)
      .def_readwrite("z_probs", &DgpSpec::z_probs)
      .def_readwrite("p_of_z", &DgpSpec::p_of_z)
      .def_readwrite("misreport", &DgpSpec::misreport)
      .def_readwrite("eps_cut", &DgpSpec::eps_cut)
      .def_readwrite("noise_sd", &DgpSpec::noise_sd)
      .def_readwrite("seed", &DgpSpec::seed)
      .def("alpha", &DgpSpec::alpha)
      .def("lipschitz", &DgpSpec::lipschitz)
      .def("ordering", &DgpSpec::ordering);
  m.def("simulate", py::overload_cast<const DgpSpec&, std::size_t, std::uint64_t>(&simulate),
        py::arg("spec"), py::arg("n"), py::arg("seed"));
  m.def("population_moments", &population_moments, py::arg("spec"));
  m.def("true_mte", &true_mte, py::arg("spec"), py::arg("v"));
  m.def("true_ate", &true_ate, py::arg("spec"));
  m.def("flip_prob_given_z", &flip_prob_given_z, py::arg("spec"), py::arg("z_index"));
  m.def("dgp_preset", &dgp::preset, py::arg("name"));

  m.def("read_sample_csv", &read_sample_csv, py::arg("path"), py::arg("ordering"));
  m.def("write_sample_csv", &write_sample_csv, py::arg("path"), py::arg("sample"),
        py::arg("ordering"));
}
