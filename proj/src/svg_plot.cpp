#include "loggas/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace loggas {

namespace {
const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}
}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgPlot::add_line(const std::vector<double>& x, const std::vector<double>& y,
                       const std::string& label, const std::string& color) {
  if (x.size() != y.size()) throw std::invalid_argument("SvgPlot: x/y size mismatch");
  series_.push_back({x, y, label, color, false});
}

void SvgPlot::add_bars(const std::vector<double>& edges, const std::vector<double>& height,
                       const std::string& label, const std::string& color) {
  if (edges.size() != height.size() + 1) throw std::invalid_argument("SvgPlot: need bins+1 edges");
  series_.push_back({edges, height, label, color, true});
}

void SvgPlot::write(const std::string& path) const {
  const double W = 760, H = 480, L = 70, R = 20, T = 40, B = 55;
  double x_min = 1e300, x_max = -1e300, y_min = 0.0, y_max = -1e300;
  for (const auto& s : series_) {
    for (double v : s.x) {
      x_min = std::min(x_min, v);
      x_max = std::max(x_max, v);
    }
    for (double v : s.y) {
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
  }
  if (series_.empty() || x_min >= x_max) {
    x_min = 0;
    x_max = 1;
  }
  if (y_min >= y_max) {
    y_min = 0;
    y_max = 1;
  }
  const double y_pad = 0.05 * (y_max - y_min);
  y_max += y_pad;
  if (y_min < 0) y_min -= y_pad;

  auto px = [&](double v) { return L + (v - x_min) / (x_max - x_min) * (W - L - R); };
  auto py = [&](double v) { return H - B - (v - y_min) / (y_max - y_min) * (H - T - B); };

  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write plot: " + path);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">" << title_
     << "</text>\n";

  // axes + ticks
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  const double xs = nice_step(x_max - x_min);
  for (double v = std::ceil(x_min / xs) * xs; v <= x_max + 1e-12; v += xs) {
    os << "<line x1=\"" << px(v) << "\" y1=\"" << H - B << "\" x2=\"" << px(v) << "\" y2=\"" << H - B + 5
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(v) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << fmt(v)
       << "</text>\n";
  }
  const double ys = nice_step(y_max - y_min);
  for (double v = std::ceil(y_min / ys) * ys; v <= y_max + 1e-12; v += ys) {
    os << "<line x1=\"" << L - 5 << "\" y1=\"" << py(v) << "\" x2=\"" << L << "\" y2=\"" << py(v)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << L - 8 << "\" y=\"" << py(v) + 4 << "\" text-anchor=\"end\">" << fmt(v)
       << "</text>\n";
  }
  if (!x_label_.empty())
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
       << x_label_ << "</text>\n";
  if (!y_label_.empty())
    os << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << (T + H - B) / 2 << ")\">" << y_label_ << "</text>\n";

  // series
  int color_index = 0;
  double legend_y = T + 8;
  for (const auto& s : series_) {
    const std::string color = s.color.empty() ? kPalette[color_index % 6] : s.color;
    ++color_index;
    if (s.bars) {
      for (std::size_t b = 0; b < s.y.size(); ++b) {
        const double x0 = px(s.x[b]), x1 = px(s.x[b + 1]);
        os << "<rect x=\"" << x0 << "\" y=\"" << py(s.y[b]) << "\" width=\"" << std::max(0.5, x1 - x0 - 0.5)
           << "\" height=\"" << py(std::max(0.0, y_min)) - py(s.y[b]) << "\" fill=\"" << color
           << "\" fill-opacity=\"0.45\"/>\n";
      }
    } else {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) os << px(s.x[i]) << "," << py(s.y[i]) << " ";
      os << "\"/>\n";
    }
    if (!s.label.empty()) {
      os << "<rect x=\"" << W - R - 160 << "\" y=\"" << legend_y - 9 << "\" width=\"12\" height=\"12\" fill=\""
         << color << "\"/>\n";
      os << "<text x=\"" << W - R - 144 << "\" y=\"" << legend_y + 1 << "\">" << s.label << "</text>\n";
      legend_y += 18;
    }
  }
  os << "</svg>\n";
}

}  // namespace loggas
