#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "mathieu/operators.hpp"

namespace cliutil {

// Alpha flag forms: "p/q" (exact rational), "p/n" (family: denominator bound
// to the window size at resolve time), or a plain decimal.
struct AlphaSpec {
  bool rational = false;
  bool family_over_n = false;
  long long num = 0;
  long long den = 0;
  double value = 0.0;
  std::string raw;
};

AlphaSpec parse_alpha(const std::string& text);  // throws mathieu::ParameterError

// Builds validated operator parameters; rational and family alphas keep the
// exact p/q so diagonal cosines are reduced through the rational.
mathieu::OperatorParams resolve_params(const AlphaSpec& alpha, double beta, double theta,
                                       int n);

std::string g17(double x);  // 17 significant digits, round-trip exact
std::string g6(double x);   // display rounding for SVG labels

struct Table {
  std::vector<std::string> comments;  // emitted as '#' lines
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& os, const Table& t);
void write_dat(std::ostream& os, const Table& t);  // gnuplot: space separated

// Writes to the path, creating or truncating; throws mathieu::Error on I/O
// failure.  write_dat_file derives nothing: callers pass the full path.
void write_csv_file(const std::string& path, const Table& t);
void write_dat_file(const std::string& path, const Table& t);

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

// Minimal polyline chart: axes, ticks, legend, one polyline per series.
void write_svg_file(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<Series>& series);

// "path/to/plot.svg" -> "path/to/plot.dat"
std::string dat_path_for(const std::string& svg_path);

bool color_allowed();  // stdout is a tty and NO_COLOR is unset

}  // namespace cliutil
