#include "contra/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "contra/errors.hpp"

namespace contra {

namespace {

struct ColumnSpec {
  std::string_view key;
  std::string_view heading;
  double width;
};

constexpr ColumnSpec kColumnSpecs[] = {
    {"id", "ID", 34.0},        {"study", "Study", 84.0},     {"year", "Year", 42.0},
    {"group_x", "Ctrl", 150.0}, {"group_y", "Tx", 150.0},     {"units", "Units", 64.0},
    {"species", "Sp", 30.0},   {"pmid", "PMID", 70.0},       {"location", "Loc", 46.0},
    {"alpha_dm", "αDM", 56.0},
};
constexpr double kLsWidth = 52.0;

const ColumnSpec& column_spec(std::string_view key) {
  for (const auto& spec : kColumnSpecs) {
    if (spec.key == key) return spec;
  }
  throw ArgumentError("unknown plot column '" + std::string(key) + "'");
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string escape_xml(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c; break;
    }
  }
  return out;
}

// Tick step of 1, 2 or 5 times a power of ten giving about `target` ticks.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / magnitude;
  if (norm < 1.5) return magnitude;
  if (norm < 3.5) return 2.0 * magnitude;
  if (norm < 7.5) return 5.0 * magnitude;
  return 10.0 * magnitude;
}

void check_threshold(const PlotOptions& opts) {
  if (!opts.threshold) return;
  const double t = *opts.threshold;
  if (!std::isfinite(t) || t == 0.0) throw ArgumentError("plot threshold must be nonzero");
  if (opts.sign_view == SignView::decrease && t > 0.0) {
    throw ArgumentError("a decrease view needs a negative threshold");
  }
  if (opts.sign_view == SignView::increase && t < 0.0) {
    throw ArgumentError("an increase view needs a positive threshold");
  }
}

}  // namespace

std::string format_percent(double fraction, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", std::max(0, decimals), fraction * 100.0);
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos) s = s.substr(s[0] == '-' ? 1 : 0);
  return s + "%";
}

std::pair<double, double> default_axis_limits(std::span<const ContraEntry> entries,
                                              std::optional<double> threshold) {
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& e : entries) {
    lo = std::min(lo, e.interval.lo);
    hi = std::max(hi, e.interval.hi);
  }
  if (threshold) {
    lo = std::min(lo, *threshold);
    hi = std::max(hi, *threshold);
  }
  if (hi - lo <= 0.0) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = PlotStyle::kAxisPadding * (hi - lo);
  return {lo - pad, hi + pad};
}

std::string render_contra_plot(std::span<const ContraEntry> entries, const PlotOptions& opts) {
  if (entries.empty()) throw ArgumentError("cannot render a contra plot with no entries");
  check_threshold(opts);
  if (opts.axis_limits && !(opts.axis_limits->first < opts.axis_limits->second)) {
    throw ArgumentError("axis limits must be increasing");
  }

  using S = PlotStyle;
  const auto [xmin, xmax] =
      opts.axis_limits ? *opts.axis_limits : default_axis_limits(entries, opts.threshold);
  const AxisMap axis{xmin, xmax, S::kMargin, S::kPlotWidth};

  std::vector<ColumnSpec> columns;
  for (const auto& key : opts.columns) columns.push_back(column_spec(key));
  double table_width = kLsWidth;
  for (const auto& c : columns) table_width += c.width;

  const double top = S::kMargin + S::kHeaderHeight;
  const double rows_height = S::kRowHeight * static_cast<double>(entries.size());
  const double plot_bottom = top + rows_height;
  const double table_x0 = S::kMargin + S::kPlotWidth + S::kGap;
  const double width = table_x0 + table_width + S::kMargin;
  const double height = plot_bottom + S::kAxisHeight + S::kMargin;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width)
     << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height)
     << "\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"" << num(S::kFontSize)
     << "\">\n";
  os << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" fill=\"white\"/>\n";
  if (!opts.title.empty()) {
    os << "<text class=\"title\" x=\"" << num(S::kMargin) << "\" y=\"" << num(S::kMargin + 4.0)
       << "\" font-weight=\"bold\">" << escape_xml(opts.title) << "</text>\n";
  }
  os << "<text class=\"axis-title\" x=\"" << num(S::kMargin + S::kPlotWidth / 2.0) << "\" y=\""
     << num(top - 8.0) << "\" text-anchor=\"middle\">Relative difference in means ("
     << to_string(opts.sign_view) << ")</text>\n";

  // Axis with ticks.
  os << "<g class=\"x-axis\">\n";
  os << "<line class=\"axis-line\" x1=\"" << num(axis(xmin)) << "\" y1=\"" << num(plot_bottom)
     << "\" x2=\"" << num(axis(xmax)) << "\" y2=\"" << num(plot_bottom)
     << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  const double step = nice_step(xmax - xmin, 6);
  const int tick_decimals = std::max(0, static_cast<int>(-std::floor(std::log10(step * 100.0))));
  const auto first_tick = static_cast<long>(std::ceil(xmin / step));
  const auto last_tick = static_cast<long>(std::floor(xmax / step));
  for (long tick = first_tick; tick <= last_tick; ++tick) {
    const double v = static_cast<double>(tick) * step;
    os << "<line class=\"tick\" x1=\"" << num(axis(v)) << "\" y1=\"" << num(plot_bottom)
       << "\" x2=\"" << num(axis(v)) << "\" y2=\"" << num(plot_bottom + 4.0)
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<text class=\"tick-label\" x=\"" << num(axis(v)) << "\" y=\""
       << num(plot_bottom + 16.0) << "\" text-anchor=\"middle\">"
       << format_percent(v, tick_decimals) << "</text>\n";
  }
  os << "</g>\n";

  os << "<line class=\"zero-line\" x1=\"" << num(axis(0.0)) << "\" y1=\"" << num(top)
     << "\" x2=\"" << num(axis(0.0)) << "\" y2=\"" << num(plot_bottom)
     << "\" stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"3,3\"/>\n";
  if (opts.threshold) {
    const double tx = axis(*opts.threshold);
    os << "<line class=\"threshold\" data-value=\"" << format_real(*opts.threshold) << "\" x1=\""
       << num(tx) << "\" y1=\"" << num(top) << "\" x2=\"" << num(tx) << "\" y2=\""
       << num(plot_bottom) << "\" stroke=\"" << S::kThresholdColor
       << "\" stroke-width=\"2\"/>\n";
  }

  // Interval chart.
  os << "<g class=\"intervals\" stroke=\"" << S::kIntervalColor << "\" stroke-width=\"1.5\">\n";
  const double left_edge = axis(xmin);
  const double right_edge = axis(xmax);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const double y = top + S::kRowHeight * (static_cast<double>(i) + 0.5);
    const bool clip_lo = e.interval.lo < xmin;
    const bool clip_hi = e.interval.hi > xmax;
    const double x1 = clip_lo ? left_edge : axis(e.interval.lo);
    const double x2 = clip_hi ? right_edge : axis(e.interval.hi);
    os << "<line class=\"interval\" data-id=\"" << e.record.id << "\" data-lo=\""
       << format_real(e.interval.lo) << "\" data-hi=\"" << format_real(e.interval.hi)
       << "\" x1=\"" << num(x1) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x2) << "\" y2=\""
       << num(y) << "\"/>\n";
    auto endcap = [&](double x, bool clipped, double dir) {
      if (clipped) {
        os << "<path class=\"clip\" d=\"M" << num(x) << ' ' << num(y) << " L" << num(x - 6.0 * dir)
           << ' ' << num(y - 4.0) << " L" << num(x - 6.0 * dir) << ' ' << num(y + 4.0)
           << " Z\" fill=\"" << S::kIntervalColor << "\"/>\n";
      } else {
        os << "<line class=\"endcap\" x1=\"" << num(x) << "\" y1=\"" << num(y - S::kEndcapHalfHeight)
           << "\" x2=\"" << num(x) << "\" y2=\"" << num(y + S::kEndcapHalfHeight) << "\"/>\n";
      }
    };
    endcap(x1, clip_lo, -1.0);
    endcap(x2, clip_hi, 1.0);
    if (e.median >= xmin && e.median <= xmax) {
      os << "<circle class=\"median\" cx=\"" << num(axis(e.median)) << "\" cy=\"" << num(y)
         << "\" r=\"" << num(S::kMarkerRadius) << "\" fill=\"" << S::kIntervalColor << "\"/>\n";
    }
  }
  os << "</g>\n";

  // Metadata table.
  os << "<g class=\"table-header\" font-weight=\"bold\">\n";
  double x = table_x0;
  for (const auto& c : columns) {
    os << "<text x=\"" << num(x) << "\" y=\"" << num(top - 8.0) << "\">" << escape_xml(c.heading)
       << "</text>\n";
    x += c.width;
  }
  os << "<text x=\"" << num(x + kLsWidth - 4.0) << "\" y=\"" << num(top - 8.0)
     << "\" text-anchor=\"end\">Ls%</text>\n";
  os << "</g>\n";

  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const double y = top + S::kRowHeight * (static_cast<double>(i) + 0.5) + S::kFontSize / 3.0;
    os << "<g class=\"table-row\" data-id=\"" << e.record.id << "\" data-rank=\"" << e.rank
       << "\">\n";
    x = table_x0;
    for (const auto& c : columns) {
      os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\">"
         << escape_xml(metadata_value(e.record, c.key)) << "</text>\n";
      x += c.width;
    }
    os << "<text class=\"ls\" x=\"" << num(x + kLsWidth - 4.0) << "\" y=\"" << num(y)
       << "\" text-anchor=\"end\">" << format_percent(e.delta_l, opts.percent_decimals)
       << "</text>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_supplement_csv(std::span<const ContraEntry> entries) {
  Dataset ds;
  for (const auto& e : entries) ds.records.push_back(e.record);
  return serialize_csv(ds);
}

std::string render_supplement_html(std::span<const ContraEntry> entries) {
  std::ostringstream os;
  os << "<table class=\"contra-supplement\">\n<thead><tr>";
  for (auto column : kCsvColumns) os << "<th>" << column << "</th>";
  os << "</tr></thead>\n<tbody>\n";
  for (const auto& e : entries) {
    os << "<tr data-id=\"" << e.record.id << "\">";
    for (auto column : kCsvColumns) {
      os << "<td>" << escape_xml(metadata_value(e.record, column)) << "</td>";
    }
    os << "</tr>\n";
  }
  os << "</tbody>\n</table>\n";
  return os.str();
}

}  // namespace contra
