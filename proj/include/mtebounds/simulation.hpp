#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtebounds/moments.hpp"

namespace mtebounds {

/// Continuous piecewise-linear function on [0,1], used for the true marginal
/// treatment responses E[Y_d | V=v].
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<double> knots_x, std::vector<double> knots_y);
  static PiecewiseLinear affine(double at0, double at1);

  double operator()(double v) const;
  double integral(double a, double b) const;  // exact, signed
  double lipschitz() const;                   // max |slope|

  const std::vector<double>& knots_x() const { return xs_; }
  const std::vector<double>& knots_y() const { return ys_; }

 private:
  std::vector<double> xs_, ys_;
};

enum class MisreportMode {
  none,               // D* = D
  verbatim_onesided,  // D* = D(1-eps): underreporting only
  full_flip,          // D* = D(1-eps) + (1-D)eps
};

/// A data-generating process with selection on a uniform latent V, linear-in-
/// pieces treatment responses, and misreporting driven by eps = 1{V <= eps_cut}
/// (so P(eps=1) = eps_cut). Closed-form population oracles accompany it.
struct DgpSpec {
  PiecewiseLinear m1 = PiecewiseLinear::affine(0.0, 1.0);
  PiecewiseLinear m0 = PiecewiseLinear::affine(0.0, 0.25);
  std::vector<std::string> z_labels;  // ascending true propensity
  std::vector<double> z_probs;
  std::vector<double> p_of_z;
  MisreportMode misreport = MisreportMode::none;
  double eps_cut = 0.0;
  double noise_sd = 0.0;  // additive outcome noise; the baseline DGP is noiseless given V
  std::uint64_t seed = 0;

  double alpha() const { return misreport == MisreportMode::none ? 0.0 : eps_cut; }
  double lipschitz() const;
  InstrumentOrdering ordering() const;
  void validate() const;
};

/// n independent draws; observation i is generated from its own counter-based
/// RNG stream so parallel generation reproduces sequential output exactly.
Sample simulate(const DgpSpec& spec, std::size_t n);
Sample simulate(const DgpSpec& spec, std::size_t n, std::uint64_t seed);

/// Exact E[Y|Z=z] and P(D*=1|Z=z) by piecewise integration (counts are 0).
MomentTable population_moments(const DgpSpec& spec);

double true_mte(const DgpSpec& spec, double v);
double true_ate(const DgpSpec& spec);

/// P(D* != D | Z=z): constant in z for full_flip, equal to min(p(z), eps_cut)
/// for one-sided underreporting, 0 without misreporting.
double flip_prob_given_z(const DgpSpec& spec, int z_index);

namespace dgp {

/// Linear responses m1(v)=v, m0(v)=v/4, binary instrument p in {0.1, 0.7},
/// one-sided underreporting with eps = 1{V <= 0.15}.
DgpSpec demo_onesided();

/// Same responses and instrument, full-flip misreporting (the measurement
/// model the identification results are stated for).
DgpSpec demo_flip();

/// Three-valued instrument p in {0.1, 0.4, 0.7}, full-flip misreporting.
DgpSpec demo_flip3();

/// Look up one of the presets above by name ("demo-onesided", "demo-flip",
/// "demo-flip3"); throws on unknown names.
DgpSpec preset(const std::string& name);

}  // namespace dgp

}  // namespace mtebounds
