#include "mtebounds/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mtebounds {

namespace {

constexpr int kWidth = 720, kHeight = 480;
constexpr int kMarginL = 60, kMarginR = 160, kMarginT = 24, kMarginB = 40;

const char* kPalette[] = {"#c62828", "#1565c0", "#ef6c00", "#2e7d32", "#6a1b9a", "#00838f"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void write_bounds_svg(const std::string& path, const std::vector<SvgBand>& bands, double y_lo,
                      double y_hi) {
  if (!(y_lo < y_hi)) throw std::invalid_argument("svg: need y_lo < y_hi");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");

  const double plot_w = kWidth - kMarginL - kMarginR;
  const double plot_h = kHeight - kMarginT - kMarginB;
  auto px = [&](double v) { return kMarginL + v * plot_w; };
  auto py = [&](double y) {
    const double t = (std::clamp(y, y_lo, y_hi) - y_lo) / (y_hi - y_lo);
    return kMarginT + (1.0 - t) * plot_h;
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"white\" stroke=\"#444\"/>\n";

  // axis ticks: quarters on x, five levels on y
  for (int i = 0; i <= 4; ++i) {
    const double v = i / 4.0;
    out << "<line x1=\"" << px(v) << "\" y1=\"" << kMarginT + plot_h << "\" x2=\"" << px(v)
        << "\" y2=\"" << kMarginT + plot_h + 5 << "\" stroke=\"#444\"/>\n";
    out << "<text x=\"" << px(v) << "\" y=\"" << kMarginT + plot_h + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(v) << "</text>\n";
    const double y = y_lo + (y_hi - y_lo) * i / 4.0;
    out << "<line x1=\"" << kMarginL - 5 << "\" y1=\"" << py(y) << "\" x2=\"" << kMarginL
        << "\" y2=\"" << py(y) << "\" stroke=\"#444\"/>\n";
    out << "<text x=\"" << kMarginL - 8 << "\" y=\"" << py(y) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(y) << "</text>\n";
  }
  out << "<text x=\"" << kMarginL + plot_w / 2 << "\" y=\"" << kHeight - 6
      << "\" font-size=\"12\" text-anchor=\"middle\">v*</text>\n";

  for (std::size_t bi = 0; bi < bands.size(); ++bi) {
    const auto& band = bands[bi];
    const char* color = kPalette[bi % (sizeof kPalette / sizeof kPalette[0])];
    for (int side = 0; side < 2; ++side) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < band.curve.size(); ++i) {
        const auto& iv = band.curve.intervals[i];
        if (iv.empty()) continue;
        const double y = side == 0 ? iv.lo : iv.hi;
        out << px(band.curve.vstars[i]) << ',' << py(y) << ' ';
      }
      out << "\"/>\n";
    }
    out << "<text x=\"" << kMarginL + plot_w + 12 << "\" y=\"" << kMarginT + 16 + 18 * bi
        << "\" font-size=\"12\" fill=\"" << color << "\">" << band.label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace mtebounds
