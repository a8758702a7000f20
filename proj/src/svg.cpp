#include "pullsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "pullsim/errors.hpp"

namespace pullsim {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 50.0;

struct Series {
  std::string label;
  std::string colour;
  std::vector<double> y;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// "--" may not appear inside an XML comment.
std::string comment_safe(std::string s) {
  std::size_t pos = 0;
  while ((pos = s.find("--", pos)) != std::string::npos) {
    s.replace(pos, 2, "- -");
    pos += 2;
  }
  return s;
}

std::pair<double, double> padded_range(double lo, double hi) {
  if (!(hi > lo)) return {lo - 0.5, hi + 0.5};
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

PlotKind plot_kind_from_string(std::string_view s) {
  if (s == "density") return PlotKind::density;
  if (s == "moments") return PlotKind::moments;
  if (s == "cdf-compare") return PlotKind::cdf_compare;
  throw UsageError("unknown plot kind '" + std::string(s) + "'");
}

std::string_view to_string(PlotKind k) noexcept {
  switch (k) {
    case PlotKind::density: return "density";
    case PlotKind::moments: return "moments";
    case PlotKind::cdf_compare: return "cdf-compare";
  }
  return "";
}

std::string render_plot(PlotKind kind, const CsvTable& table) {
  std::string x_label;
  std::string y_label;
  std::vector<double> xs;
  std::vector<Series> series;
  switch (kind) {
    case PlotKind::density:
      x_label = "x";
      y_label = "density";
      xs = table.numeric_column("x");
      series.push_back({"density of X", "#c0392b", table.numeric_column("density")});
      break;
    case PlotKind::moments:
      x_label = "x_shift";
      y_label = "moment";
      xs = table.numeric_column("x_shift");
      series.push_back({"mean", "#c0392b", table.numeric_column("mean")});
      series.push_back({"variance", "#2c3e9f", table.numeric_column("variance")});
      break;
    case PlotKind::cdf_compare:
      x_label = "k";
      y_label = "tail probability";
      xs = table.numeric_column("k");
      series.push_back({"P(X_n >= k)", "#c0392b", table.numeric_column("runtime_tail")});
      series.push_back({"P(ceil(c+X) >= k)", "#2c3e9f", table.numeric_column("limit_tail")});
      break;
  }
  if (xs.empty()) throw FormatError("plot input has no data rows");

  double ylo = series.front().y.front();
  double yhi = ylo;
  for (const auto& s : series) {
    for (double v : s.y) {
      ylo = std::min(ylo, v);
      yhi = std::max(yhi, v);
    }
  }
  const auto [x0, x1] = padded_range(*std::min_element(xs.begin(), xs.end()),
                                     *std::max_element(xs.begin(), xs.end()));
  const auto [y0, y1] = padded_range(ylo, yhi);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<!-- " << comment_safe(table.metadata.dump()) << " -->\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
      << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<g stroke=\"#dddddd\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4.0;
    const double fy = y0 + (y1 - y0) * i / 4.0;
    svg << "<line x1=\"" << num(px(fx)) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(px(fx))
        << "\" y2=\"" << num(kTop + ph) << "\"/>\n";
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py(fy)) << "\" x2=\""
        << num(kLeft + pw) << "\" y2=\"" << num(py(fy)) << "\"/>\n";
    svg << "<text stroke=\"none\" fill=\"black\" text-anchor=\"middle\" x=\"" << num(px(fx))
        << "\" y=\"" << num(kTop + ph + 16) << "\">" << num(fx) << "</text>\n";
    svg << "<text stroke=\"none\" fill=\"black\" text-anchor=\"end\" x=\"" << num(kLeft - 6)
        << "\" y=\"" << num(py(fy) + 4) << "\">" << num(fy) << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 10)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << escape(x_label) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 "
      << num(kTop + ph / 2) << ")\">" << escape(y_label) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const Series& ser = series[s];
    svg << "<polyline fill=\"none\" stroke=\"" << ser.colour << "\" stroke-width=\"1.5\""
        << (s > 0 ? " stroke-dasharray=\"6 3\"" : "") << " points=\"";
    if (xs.size() == 1) {
      svg << num(kLeft) << ',' << num(py(ser.y[0])) << ' ' << num(kLeft + pw) << ','
          << num(py(ser.y[0]));
    } else {
      for (std::size_t i = 0; i < xs.size(); ++i) {
        svg << (i ? " " : "") << num(px(xs[i])) << ',' << num(py(ser.y[i]));
      }
    }
    svg << "\"/>\n";
    const double ly = kTop + 14.0 + 16.0 * static_cast<double>(s);
    svg << "<line x1=\"" << num(kLeft + pw - 150) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
        << num(kLeft + pw - 125) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << ser.colour
        << "\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << num(kLeft + pw - 120) << "\" y=\"" << num(ly)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(ser.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void plot(PlotKind kind, const std::filesystem::path& input, const std::filesystem::path& output) {
  const std::string body = render_plot(kind, read_csv(input));
  std::ofstream out(output, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + output.string() + " for writing");
  out << body;
  if (!out) throw IoError("write to " + output.string() + " failed");
}

}  // namespace pullsim
