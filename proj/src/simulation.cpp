#include "mtebounds/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mtebounds {

PiecewiseLinear::PiecewiseLinear(std::vector<double> knots_x, std::vector<double> knots_y)
    : xs_(std::move(knots_x)), ys_(std::move(knots_y)) {
  if (xs_.size() < 2 || xs_.size() != ys_.size())
    throw std::invalid_argument("piecewise linear: need matching knot vectors, >= 2 knots");
  if (xs_.front() != 0.0 || xs_.back() != 1.0)
    throw std::invalid_argument("piecewise linear: knots must span [0,1]");
  for (std::size_t i = 1; i < xs_.size(); ++i)
    if (!(xs_[i] > xs_[i - 1]))
      throw std::invalid_argument("piecewise linear: knots must be strictly increasing");
}

PiecewiseLinear PiecewiseLinear::affine(double at0, double at1) {
  return PiecewiseLinear({0.0, 1.0}, {at0, at1});
}

double PiecewiseLinear::operator()(double v) const {
  if (v <= 0.0) return ys_.front();
  if (v >= 1.0) return ys_.back();
  const std::size_t j =
      static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), v) - xs_.begin());
  const double t = (v - xs_[j - 1]) / (xs_[j] - xs_[j - 1]);
  return ys_[j - 1] + t * (ys_[j] - ys_[j - 1]);
}

double PiecewiseLinear::integral(double a, double b) const {
  if (a > b) return -integral(b, a);
  // trapezoid over each intersected segment is exact for a piecewise line
  double acc = 0.0;
  for (std::size_t j = 1; j < xs_.size(); ++j) {
    const double lo = std::max(a, xs_[j - 1]);
    const double hi = std::min(b, xs_[j]);
    if (hi <= lo) continue;
    acc += 0.5 * (hi - lo) * ((*this)(lo) + (*this)(hi));
  }
  return acc;
}

double PiecewiseLinear::lipschitz() const {
  double m = 0.0;
  for (std::size_t j = 1; j < xs_.size(); ++j)
    m = std::max(m, std::abs((ys_[j] - ys_[j - 1]) / (xs_[j] - xs_[j - 1])));
  return m;
}

double DgpSpec::lipschitz() const { return std::max(m1.lipschitz(), m0.lipschitz()); }

InstrumentOrdering DgpSpec::ordering() const { return InstrumentOrdering(z_labels); }

void DgpSpec::validate() const {
  if (z_labels.size() < 2 || z_labels.size() != z_probs.size() ||
      z_labels.size() != p_of_z.size())
    throw std::invalid_argument("dgp: need matching z_labels, z_probs, p_of_z with >= 2 values");
  double total = 0.0;
  for (double q : z_probs) {
    if (!(q > 0.0)) throw std::invalid_argument("dgp: instrument probabilities must be positive");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("dgp: instrument probabilities must sum to 1");
  for (double p : p_of_z)
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("dgp: propensities must lie in (0,1)");
  for (std::size_t i = 1; i < p_of_z.size(); ++i)
    if (!(p_of_z[i] > p_of_z[i - 1]))
      throw std::invalid_argument("dgp: p_of_z must be strictly increasing (label order)");
  if (!(eps_cut >= 0.0 && eps_cut <= 1.0))
    throw std::invalid_argument("dgp: eps_cut must lie in [0,1]");
  if (!(noise_sd >= 0.0)) throw std::invalid_argument("dgp: noise_sd must be >= 0");
}

namespace {

// splitmix64: cheap, well-distributed mixing of (seed, index) into a stream
// seed, so every observation owns an independent deterministic RNG.
std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

}  // namespace

Sample simulate(const DgpSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  std::vector<double> cum(spec.z_probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < spec.z_probs.size(); ++i) {
    acc += spec.z_probs[i];
    cum[i] = acc;
  }
  cum.back() = 1.0;

  Sample s;
  s.y.resize(n);
  s.dstar.resize(n);
  s.z.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::mt19937_64 rng(mix(seed, i));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double uz = unif(rng);
    const double v = unif(rng);
    int zi = 0;
    while (uz > cum[zi]) ++zi;
    const bool d = v <= spec.p_of_z[zi];
    const bool eps = v <= spec.eps_cut;
    bool dstar = d;
    switch (spec.misreport) {
      case MisreportMode::none: break;
      case MisreportMode::verbatim_onesided: dstar = d && !eps; break;
      case MisreportMode::full_flip: dstar = d != eps; break;
    }
    double y = d ? spec.m1(v) : spec.m0(v);
    if (spec.noise_sd > 0.0) {
      std::normal_distribution<double> noise(0.0, spec.noise_sd);
      y += noise(rng);
    }
    s.y[i] = y;
    s.dstar[i] = dstar ? 1 : 0;
    s.z[i] = zi;
  }
  return s;
}

Sample simulate(const DgpSpec& spec, std::size_t n) { return simulate(spec, n, spec.seed); }

MomentTable population_moments(const DgpSpec& spec) {
  spec.validate();
  MomentTable t;
  t.labels = spec.z_labels;
  const int k = static_cast<int>(spec.z_labels.size());
  t.ey.resize(k);
  t.pdstar.resize(k);
  t.n.assign(k, 0);
  for (int z = 0; z < k; ++z) {
    const double p = spec.p_of_z[z];
    t.ey[z] = spec.m1.integral(0.0, p) + spec.m0.integral(p, 1.0);
    switch (spec.misreport) {
      case MisreportMode::none: t.pdstar[z] = p; break;
      case MisreportMode::verbatim_onesided: t.pdstar[z] = std::max(0.0, p - spec.eps_cut); break;
      case MisreportMode::full_flip: t.pdstar[z] = std::abs(p - spec.eps_cut); break;
    }
  }
  return t;
}

double true_mte(const DgpSpec& spec, double v) { return spec.m1(v) - spec.m0(v); }

double true_ate(const DgpSpec& spec) {
  return spec.m1.integral(0.0, 1.0) - spec.m0.integral(0.0, 1.0);
}

double flip_prob_given_z(const DgpSpec& spec, int z_index) {
  const double p = spec.p_of_z.at(z_index);
  switch (spec.misreport) {
    case MisreportMode::none: return 0.0;
    case MisreportMode::verbatim_onesided: return std::min(p, spec.eps_cut);
    case MisreportMode::full_flip: return spec.eps_cut;
  }
  return 0.0;
}

namespace dgp {

namespace {

DgpSpec base_two_point() {
  DgpSpec s;
  s.m1 = PiecewiseLinear::affine(0.0, 1.0);
  s.m0 = PiecewiseLinear::affine(0.0, 0.25);
  s.z_labels = {"0.1", "0.7"};
  s.z_probs = {0.5, 0.5};
  s.p_of_z = {0.1, 0.7};
  s.eps_cut = 0.15;
  s.seed = 20240915;
  return s;
}

}  // namespace

DgpSpec demo_onesided() {
  DgpSpec s = base_two_point();
  s.misreport = MisreportMode::verbatim_onesided;
  return s;
}

DgpSpec demo_flip() {
  DgpSpec s = base_two_point();
  s.misreport = MisreportMode::full_flip;
  return s;
}

DgpSpec demo_flip3() {
  DgpSpec s = base_two_point();
  s.misreport = MisreportMode::full_flip;
  s.z_labels = {"0.1", "0.4", "0.7"};
  s.z_probs = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  s.p_of_z = {0.1, 0.4, 0.7};
  return s;
}

DgpSpec preset(const std::string& name) {
  if (name == "demo-onesided") return demo_onesided();
  if (name == "demo-flip") return demo_flip();
  if (name == "demo-flip3") return demo_flip3();
  throw std::invalid_argument("unknown dgp preset '" + name + "'");
}

}  // namespace dgp

}  // namespace mtebounds
