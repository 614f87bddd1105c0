#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mtebounds {

/// The instrument labels in ascending order of their true propensity scores.
/// The ordering is declared by the user, never inferred from the data:
/// misreporting can invert the order of the observed treatment shares.
class InstrumentOrdering {
 public:
  explicit InstrumentOrdering(std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_.at(i); }

  /// Index of a label in the ordering, or -1 when unknown.
  int index_of(const std::string& label) const;

 private:
  std::vector<std::string> labels_;
};

/// Observed rows (Y, D*, Z) in column layout. The instrument is stored as an
/// index into the declared ordering so resampling never touches strings.
struct Sample {
  std::vector<double> y;
  std::vector<std::uint8_t> dstar;
  std::vector<std::int32_t> z;

  std::size_t size() const { return y.size(); }
};

/// Validates rows against the ordering: dstar must be 0/1 and every label
/// must be known. Throws std::invalid_argument otherwise.
Sample make_sample(std::span<const double> y, std::span<const int> dstar,
                   std::span<const std::string> z_labels, const InstrumentOrdering& ordering);

/// Conditional moments per instrument value, in ordering order.
struct MomentTable {
  std::vector<std::string> labels;
  std::vector<double> ey;       // E[Y | Z=z]
  std::vector<double> pdstar;   // P(D*=1 | Z=z)
  std::vector<std::int64_t> n;  // stratum row counts (0 for population tables)
  std::vector<std::string> warnings;

  int size() const { return static_cast<int>(labels.size()); }
  int index_of(const std::string& label) const;
};

/// Stratum means of Y and shares of D*=1 per instrument value. Every label of
/// the ordering must have at least one row. Strata smaller than
/// `min_stratum_warn` produce a warning in the returned table, not an error.
MomentTable estimate_moments(const Sample& sample, const InstrumentOrdering& ordering,
                             int min_stratum_warn = 30);

struct PairDeltas {
  double delta_y;      // E[Y|Z=z_hi] - E[Y|Z=z_lo]
  double delta_dstar;  // P(D*=1|Z=z_hi) - P(D*=1|Z=z_lo)
};

/// Moment contrasts for an ordered pair of instrument values given by index
/// into the table. The canonical direction has z_hi ranked above z_lo; the
/// reversed call yields the negated deltas. Equal indices are rejected.
PairDeltas pair_deltas(const MomentTable& moments, int z_hi, int z_lo);

/// All ordered index pairs (hi, lo) with hi ranked above lo.
std::vector<std::pair<int, int>> all_pairs(int k);

}  // namespace mtebounds
