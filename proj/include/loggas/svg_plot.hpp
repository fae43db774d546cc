#ifndef LOGGAS_SVG_PLOT_HPP
#define LOGGAS_SVG_PLOT_HPP

#include <string>
#include <vector>

namespace loggas {

// Minimal SVG line/bar plotter for run reports. Axis limits are taken from
// the data; ~5 ticks per axis.
class SvgPlot {
public:
  SvgPlot(std::string title, std::string x_label = "", std::string y_label = "");

  void add_line(const std::vector<double>& x, const std::vector<double>& y, const std::string& label,
                const std::string& color = "");
  void add_bars(const std::vector<double>& edges, const std::vector<double>& height,
                const std::string& label, const std::string& color = "");
  void write(const std::string& path) const;

private:
  struct Series {
    std::vector<double> x, y;
    std::string label, color;
    bool bars = false;
  };
  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
};

}  // namespace loggas

#endif
