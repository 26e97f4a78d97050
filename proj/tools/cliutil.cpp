#include "cliutil.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "mathieu/errors.hpp"

namespace cliutil {

namespace {

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

long long parse_ll(const std::string& s, const char* what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw mathieu::ParameterError(std::string("could not parse ") + what + ": '" + s + "'");
  }
  if (used != s.size())
    throw mathieu::ParameterError(std::string("trailing characters in ") + what + ": '" + s +
                                  "'");
  return v;
}

}  // namespace

AlphaSpec parse_alpha(const std::string& text) {
  AlphaSpec a;
  a.raw = trimmed(text);
  if (a.raw.empty()) throw mathieu::ParameterError("empty --alpha");
  const auto slash = a.raw.find('/');
  if (slash != std::string::npos) {
    const std::string p = trimmed(a.raw.substr(0, slash));
    const std::string q = trimmed(a.raw.substr(slash + 1));
    a.num = parse_ll(p, "alpha numerator");
    if (q == "n" || q == "N") {
      a.family_over_n = true;
      return a;
    }
    a.den = parse_ll(q, "alpha denominator");
    if (a.den <= 0) throw mathieu::ParameterError("alpha denominator must be positive");
    a.rational = true;
    return a;
  }
  std::size_t used = 0;
  try {
    a.value = std::stod(a.raw, &used);
  } catch (const std::exception&) {
    throw mathieu::ParameterError("could not parse --alpha: '" + a.raw + "'");
  }
  if (used != a.raw.size())
    throw mathieu::ParameterError("trailing characters in --alpha: '" + a.raw + "'");
  return a;
}

mathieu::OperatorParams resolve_params(const AlphaSpec& alpha, double beta, double theta,
                                       int n) {
  if (alpha.family_over_n) return mathieu::make_params_rational(alpha.num, n, beta, theta, n);
  if (alpha.rational) return mathieu::make_params_rational(alpha.num, alpha.den, beta, theta, n);
  return mathieu::make_params(alpha.value, beta, theta, n);
}

std::string g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string g6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  for (const std::string& c : t.comments) os << "# " << c << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "");
  os << "\n";
  for (const std::vector<std::string>& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << row[i] << (i + 1 < row.size() ? "," : "");
    os << "\n";
  }
}

void write_dat(std::ostream& os, const Table& t) {
  for (const std::string& c : t.comments) os << "# " << c << "\n";
  os << "#";
  for (const std::string& c : t.columns) os << " " << c;
  os << "\n";
  for (const std::vector<std::string>& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
    os << "\n";
  }
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw mathieu::Error("could not open output file: " + path);
  return os;
}

}  // namespace

void write_csv_file(const std::string& path, const Table& t) {
  std::ofstream os = open_out(path);
  write_csv(os, t);
  if (!os) throw mathieu::Error("write failed: " + path);
}

void write_dat_file(const std::string& path, const Table& t) {
  std::ofstream os = open_out(path);
  write_dat(os, t);
  if (!os) throw mathieu::Error("write failed: " + path);
}

std::string dat_path_for(const std::string& svg_path) {
  const auto dot = svg_path.find_last_of('.');
  const auto slash = svg_path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return svg_path + ".dat";
  return svg_path.substr(0, dot) + ".dat";
}

void write_svg_file(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<Series>& series) {
  const double width = 860.0, height = 520.0;
  const double ml = 80.0, mr = 24.0, mt = 44.0, mb = 56.0;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Series& s : series)
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (!(xmin <= xmax)) {
    xmin = 0.0;
    xmax = 1.0;
    ymin = 0.0;
    ymax = 1.0;
  }
  if (xmax - xmin < 1e-300) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  if (ymax - ymin < 1e-300) {
    ymin -= 1.0;
    ymax += 1.0;
  }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  const auto py = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};
  const int npal = 5;

  std::ofstream os = open_out(path);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" font-size=\"16\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\">" << title << "</text>\n";

  os << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
     << mt + ph << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
     << "\" stroke=\"black\"/>\n";

  const int nticks = 5;
  for (int i = 0; i < nticks; ++i) {
    const double fx = xmin + (xmax - xmin) * i / (nticks - 1);
    const double fy = ymin + (ymax - ymin) * i / (nticks - 1);
    os << "<line x1=\"" << px(fx) << "\" y1=\"" << mt + ph << "\" x2=\"" << px(fx) << "\" y2=\""
       << mt + ph + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(fx) << "\" y=\"" << mt + ph + 20
       << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">" << g6(fx)
       << "</text>\n";
    os << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << ml << "\" y2=\""
       << py(fy) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << py(fy) + 4
       << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">" << g6(fy)
       << "</text>\n";
  }
  os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
     << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">" << x_label
     << "</text>\n";
  os << "<text x=\"18\" y=\"" << mt + ph / 2
     << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\" "
     << "transform=\"rotate(-90 18 " << mt + ph / 2 << ")\">" << y_label << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = palette[si % npal];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : series[si].points) os << g6(px(x)) << "," << g6(py(y)) << " ";
    os << "\"/>\n";
    const double ly = mt + 14 + 18.0 * static_cast<double>(si);
    os << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw - 120
       << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << ml + pw - 114 << "\" y=\"" << ly + 4
       << "\" font-size=\"12\" font-family=\"sans-serif\">" << series[si].name << "</text>\n";
  }
  os << "</svg>\n";
  if (!os) throw mathieu::Error("write failed: " + path);
}

bool color_allowed() {
  if (std::getenv("NO_COLOR") != nullptr) return false;
  return ::isatty(1) != 0;
}

}  // namespace cliutil
