#include "mtebounds/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mtebounds {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

double parse_double(const std::string& s, const std::string& what, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("csv line " + std::to_string(line_no) + ": cannot parse " + what +
                             " from '" + s + "'");
  }
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Sample read_sample_csv(const std::string& path, const InstrumentOrdering& ordering) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw std::runtime_error("empty input file '" + path + "'");
  ++line_no;
  const auto header = split_csv_line(line);
  if (header.size() != 3 || header[0] != "y" || header[1] != "dstar" || header[2] != "z")
    throw std::runtime_error("csv line 1: expected header 'y,dstar,z'");

  std::vector<double> y;
  std::vector<int> dstar;
  std::vector<std::string> z;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3)
      throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected 3 fields, got " +
                               std::to_string(fields.size()));
    y.push_back(parse_double(fields[0], "y", line_no));
    if (fields[1] != "0" && fields[1] != "1")
      throw std::runtime_error("csv line " + std::to_string(line_no) + ": dstar must be 0 or 1");
    dstar.push_back(fields[1] == "1" ? 1 : 0);
    if (ordering.index_of(fields[2]) < 0)
      throw std::runtime_error("csv line " + std::to_string(line_no) +
                               ": unknown instrument label '" + fields[2] + "'");
    z.push_back(fields[2]);
  }
  return make_sample(y, dstar, z, ordering);
}

void write_sample_csv(const std::string& path, const Sample& sample,
                      const InstrumentOrdering& ordering) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << "y,dstar,z\n";
  for (std::size_t i = 0; i < sample.size(); ++i)
    out << format_double(sample.y[i]) << ',' << static_cast<int>(sample.dstar[i]) << ','
        << ordering.label(sample.z[i]) << '\n';
}

void write_bounds_csv(const std::string& path, const std::vector<BoundsCsvRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << "alpha,b,vstar,lb,ub,case\n";
  for (const auto& r : rows)
    out << format_double(r.alpha) << ',' << format_double(r.b) << ',' << format_double(r.vstar)
        << ',' << format_double(r.lb) << ',' << format_double(r.ub) << ',' << r.case_tag << '\n';
}

std::vector<BoundsCsvRow> read_bounds_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw std::runtime_error("empty bounds file '" + path + "'");
  ++line_no;
  std::vector<BoundsCsvRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 6)
      throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected 6 fields");
    BoundsCsvRow r;
    r.alpha = parse_double(f[0], "alpha", line_no);
    r.b = parse_double(f[1], "b", line_no);
    r.vstar = parse_double(f[2], "vstar", line_no);
    r.lb = parse_double(f[3], "lb", line_no);
    r.ub = parse_double(f[4], "ub", line_no);
    r.case_tag = f[5];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace mtebounds
