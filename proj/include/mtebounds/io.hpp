#pragma once

#include <string>
#include <vector>

#include "mtebounds/moments.hpp"

namespace mtebounds {

/// Reads a sample from CSV with header `y,dstar,z`. Malformed rows are
/// reported with their 1-based line number.
Sample read_sample_csv(const std::string& path, const InstrumentOrdering& ordering);

void write_sample_csv(const std::string& path, const Sample& sample,
                      const InstrumentOrdering& ordering);

/// One row of the bounds artifact: a grid point of one (alpha, b) cell.
struct BoundsCsvRow {
  double alpha, b, vstar, lb, ub;
  std::string case_tag;
};

void write_bounds_csv(const std::string& path, const std::vector<BoundsCsvRow>& rows);
std::vector<BoundsCsvRow> read_bounds_csv(const std::string& path);

}  // namespace mtebounds
