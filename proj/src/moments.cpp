#include "mtebounds/moments.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace mtebounds {

InstrumentOrdering::InstrumentOrdering(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.size() < 2)
    throw std::invalid_argument("instrument ordering needs at least 2 values");
  for (std::size_t i = 0; i < labels_.size(); ++i)
    for (std::size_t j = i + 1; j < labels_.size(); ++j)
      if (labels_[i] == labels_[j])
        throw std::invalid_argument("instrument ordering has duplicate label '" + labels_[i] + "'");
}

int InstrumentOrdering::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

Sample make_sample(std::span<const double> y, std::span<const int> dstar,
                   std::span<const std::string> z_labels, const InstrumentOrdering& ordering) {
  if (y.size() != dstar.size() || y.size() != z_labels.size())
    throw std::invalid_argument("make_sample: column lengths differ");
  Sample s;
  s.y.reserve(y.size());
  s.dstar.reserve(y.size());
  s.z.reserve(y.size());
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < ordering.size(); ++i) index.emplace(ordering.label(i), i);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (dstar[i] != 0 && dstar[i] != 1)
      throw std::invalid_argument("make_sample: dstar must be 0 or 1 (row " + std::to_string(i) +
                                  ")");
    auto it = index.find(z_labels[i]);
    if (it == index.end())
      throw std::invalid_argument("make_sample: unknown instrument label '" + z_labels[i] +
                                  "' (row " + std::to_string(i) + ")");
    s.y.push_back(y[i]);
    s.dstar.push_back(static_cast<std::uint8_t>(dstar[i]));
    s.z.push_back(it->second);
  }
  return s;
}

int MomentTable::index_of(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

MomentTable estimate_moments(const Sample& sample, const InstrumentOrdering& ordering,
                             int min_stratum_warn) {
  if (sample.size() == 0) throw std::invalid_argument("estimate_moments: empty sample");
  const int k = ordering.size();
  std::vector<double> sum_y(k, 0.0);
  std::vector<std::int64_t> n(k, 0), n1(k, 0);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const int zi = sample.z[i];
    if (zi < 0 || zi >= k)
      throw std::invalid_argument("estimate_moments: instrument index out of range");
    sum_y[zi] += sample.y[i];
    n1[zi] += sample.dstar[i];
    ++n[zi];
  }
  MomentTable table;
  table.labels = ordering.labels();
  table.ey.resize(k);
  table.pdstar.resize(k);
  table.n = n;
  for (int z = 0; z < k; ++z) {
    if (n[z] == 0)
      throw std::invalid_argument("estimate_moments: no rows for instrument value '" +
                                  ordering.label(z) + "'");
    table.ey[z] = sum_y[z] / static_cast<double>(n[z]);
    table.pdstar[z] = static_cast<double>(n1[z]) / static_cast<double>(n[z]);
    if (n[z] < min_stratum_warn)
      table.warnings.push_back("stratum '" + ordering.label(z) + "' has only " +
                               std::to_string(n[z]) + " rows");
  }
  return table;
}

PairDeltas pair_deltas(const MomentTable& moments, int z_hi, int z_lo) {
  if (z_hi < 0 || z_hi >= moments.size() || z_lo < 0 || z_lo >= moments.size())
    throw std::invalid_argument("pair_deltas: index out of range");
  if (z_hi == z_lo)
    throw std::invalid_argument("pair_deltas: the pair must use two distinct instrument values");
  return {moments.ey[z_hi] - moments.ey[z_lo], moments.pdstar[z_hi] - moments.pdstar[z_lo]};
}

std::vector<std::pair<int, int>> all_pairs(int k) {
  std::vector<std::pair<int, int>> pairs;
  for (int hi = 1; hi < k; ++hi)
    for (int lo = 0; lo < hi; ++lo) pairs.emplace_back(hi, lo);
  return pairs;
}

}  // namespace mtebounds
