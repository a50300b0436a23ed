#ifndef CONTRA_RENDER_HPP_
#define CONTRA_RENDER_HPP_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "contra/pipeline.hpp"

namespace contra {

// Fixed layout metrics of the contra plot, in SVG user units.
struct PlotStyle {
  static constexpr double kMargin = 16.0;
  static constexpr double kHeaderHeight = 34.0;
  static constexpr double kRowHeight = 22.0;
  static constexpr double kAxisHeight = 44.0;
  static constexpr double kPlotWidth = 380.0;
  static constexpr double kGap = 18.0;
  static constexpr double kFontSize = 11.0;
  static constexpr double kEndcapHalfHeight = 5.0;
  static constexpr double kMarkerRadius = 3.0;
  static constexpr double kAxisPadding = 0.05;
  static constexpr const char* kThresholdColor = "#d4a017";
  static constexpr const char* kIntervalColor = "#1f3a5f";
};

struct PlotOptions {
  SignView sign_view = SignView::decrease;
  // Drawn as a gold vertical line; purely illustrative.
  std::optional<double> threshold;
  // Metadata columns shown left to right; "Ls%" is always appended.
  std::vector<std::string> columns{"id", "study", "species", "group_x", "group_y"};
  std::optional<std::pair<double, double>> axis_limits;
  int percent_decimals = 0;
  std::string title;
};

// Horizontal axis mapping value -> x coordinate.
struct AxisMap {
  double min = 0.0;
  double max = 1.0;
  double x0 = 0.0;
  double width = 1.0;

  double operator()(double v) const { return x0 + (v - min) * width / (max - min); }
};

// Axis limits for a set of entries: the union of intervals, zero and the
// threshold, padded by PlotStyle::kAxisPadding on each side.
std::pair<double, double> default_axis_limits(std::span<const ContraEntry> entries,
                                              std::optional<double> threshold);

// Percent text such as "-12%" used for the Ls% column.
std::string format_percent(double fraction, int decimals);

// SVG 1.1 document: interval chart on the left, metadata table with the Ls%
// column on the right, one row per entry in the given (rank) order.
std::string render_contra_plot(std::span<const ContraEntry> entries, const PlotOptions& opts);

// Full source-table rows for the plotted studies, keyed by id.
std::string render_supplement_csv(std::span<const ContraEntry> entries);
std::string render_supplement_html(std::span<const ContraEntry> entries);

}  // namespace contra

#endif  // CONTRA_RENDER_HPP_
