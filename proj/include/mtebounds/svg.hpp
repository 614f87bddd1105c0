#pragma once

#include <string>
#include <vector>

#include "mtebounds/interval.hpp"

namespace mtebounds {

/// One lower/upper band of a sweep cell, labeled for the legend.
struct SvgBand {
  std::string label;
  IntervalCurve curve;
};

/// Dependency-free line plot of bound bands over v* in [0,1]. The y-range is
/// given by the caller (normally the support clamp range); values outside it
/// are drawn clipped to the frame.
void write_bounds_svg(const std::string& path, const std::vector<SvgBand>& bands, double y_lo,
                      double y_hi);

}  // namespace mtebounds
