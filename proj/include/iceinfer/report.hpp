#pragma once

// Preference histograms, SVG plots of bootstrap scatters and histograms, and
// the plain-text study summary.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "iceinfer/bootstrap.hpp"
#include "iceinfer/color.hpp"
#include "iceinfer/csv.hpp"
#include "iceinfer/data_model.hpp"
#include "iceinfer/error.hpp"
#include "iceinfer/preference.hpp"
#include "iceinfer/scale.hpp"
#include "iceinfer/svg.hpp"
#include "iceinfer/wedge.hpp"

namespace iceinfer {

inline constexpr std::size_t kDefaultBins = 30;

struct Histogram {
  std::vector<double> bin_edges;    ///< strictly increasing, bins + 1 entries
  std::vector<std::size_t> counts;  ///< one per bin
  std::size_t n = 0;
  std::size_t positive = 0;  ///< values strictly greater than zero
  bool all_positive = false;
};

/// Equal-width bins over [min, max]; the last bin is closed on the right.
/// A constant sample is centred in a unit-wide range.
inline Histogram make_histogram(std::span<const double> values,
                                std::size_t bins) {
  if (bins == 0)
    throw Error(ErrorCode::InvalidArgument, "histogram needs at least one bin");
  if (values.empty())
    throw Error(ErrorCode::InvalidArgument, "histogram of an empty sample");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it, hi = *hi_it;
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / static_cast<double>(bins);

  Histogram h;
  h.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i < bins; ++i)
    h.bin_edges[i] = lo + width * static_cast<double>(i);
  h.bin_edges[bins] = hi;
  h.counts.assign(bins, 0);
  h.n = values.size();
  for (double v : values) {
    auto idx = static_cast<std::size_t>(std::floor((v - lo) / width));
    ++h.counts[std::min(idx, bins - 1)];
    if (v > 0.0) ++h.positive;
  }
  h.all_positive = h.positive == h.n;
  return h;
}

inline std::vector<double> preference_values(const BootstrapScatter& scatter,
                                             const PreferenceMap& map) {
  std::vector<double> values;
  values.reserve(scatter.r());
  for (const auto& o : scatter.replicates) values.push_back(map(o.x, o.y));
  return values;
}

inline Histogram preference_histogram(const BootstrapScatter& scatter,
                                      const PreferenceMap& map,
                                      std::size_t bins = kDefaultBins) {
  return make_histogram(preference_values(scatter, map), bins);
}

// ---------------------------------------------------------------------------
// Scatter plot.
//
// Both axes share one data-to-pixel scale, so on-screen angles are true ICE
// angles and wedge rays can be read back from the file. The shorter data
// range is widened to make the plot area square.

namespace detail {

struct PlotFrame {
  static constexpr double kLeft = 90, kTop = 50, kSide = 520;
  static constexpr double kWidth = kLeft + kSide + 30;
  static constexpr double kHeight = kTop + kSide + 80;

  double cx = 0, cy = 0, half = 1;

  double px(double x) const { return kLeft + (x - (cx - half)) / (2 * half) * kSide; }
  double py(double y) const {
    return kTop + (1.0 - (y - (cy - half)) / (2 * half)) * kSide;
  }
  double pixels_per_unit() const { return kSide / (2 * half); }
};

inline std::string axis_label_x(const BootstrapScatter& s) {
  const auto lambda = csv::format_double(s.lambda().value());
  return s.perspective() == Perspective::Alias
             ? "Effectiveness difference \xCE\x94" "E (effectiveness units)"
             : fmt::format("\xCE\xBB \xC3\x97 \xCE\x94" "E (cost units, \xCE\xBB = {})",
                           lambda);
}

inline std::string axis_label_y(const BootstrapScatter& s) {
  const auto lambda = csv::format_double(s.lambda().value());
  return s.perspective() == Perspective::Alias
             ? fmt::format("\xCE\x94" "C / \xCE\xBB (effectiveness units, \xCE\xBB = {})",
                           lambda)
             : std::string("Cost difference \xCE\x94" "C (cost units)");
}

inline void draw_frame(svg::Document& doc, const PlotFrame& f,
                       std::string_view title, std::string_view xlabel,
                       std::string_view ylabel) {
  using F = PlotFrame;
  doc.raw(fmt::format(
      "<clipPath id=\"plot-area\"><rect x=\"{}\" y=\"{}\" width=\"{}\" "
      "height=\"{}\"/></clipPath>\n",
      F::kLeft, F::kTop, F::kSide, F::kSide));
  doc.rect(F::kLeft, F::kTop, F::kSide, F::kSide,
           "class=\"frame\" fill=\"none\" stroke=\"#333333\"");
  for (int k = 0; k <= 4; ++k) {
    const double t = k / 4.0;
    const double xv = f.cx - f.half + 2 * f.half * t;
    const double yv = f.cy - f.half + 2 * f.half * t;
    const double px = f.px(xv), py = f.py(yv);
    doc.line(px, F::kTop + F::kSide, px, F::kTop + F::kSide + 5,
             "class=\"tick\" stroke=\"#333333\"");
    doc.text(px, F::kTop + F::kSide + 20, fmt::format("{:.3g}", xv),
             "class=\"tick-label\" font-size=\"12\" text-anchor=\"middle\"");
    doc.line(F::kLeft - 5, py, F::kLeft, py, "class=\"tick\" stroke=\"#333333\"");
    doc.text(F::kLeft - 8, py + 4, fmt::format("{:.3g}", yv),
             "class=\"tick-label\" font-size=\"12\" text-anchor=\"end\"");
  }
  doc.text(F::kLeft + F::kSide / 2, F::kTop - 20, title,
           "class=\"title\" font-size=\"16\" text-anchor=\"middle\"");
  doc.text(F::kLeft + F::kSide / 2, F::kTop + F::kSide + 50, xlabel,
           "class=\"xlabel\" font-size=\"14\" text-anchor=\"middle\"");
  doc.text(20, F::kTop + F::kSide / 2, ylabel,
           fmt::format("class=\"ylabel\" font-size=\"14\" text-anchor=\"middle\" "
                       "transform=\"rotate(-90 20 {:.3f})\"",
                       F::kTop + F::kSide / 2));
}

}  // namespace detail

/// Replicates as `circle.rep`, the observed mean difference as
/// `circle.observed`, the ICE origin as `circle.origin`. With a map, each
/// replicate is filled by its preference value and tagged pos/neg/zero; with
/// a wedge, `line.wedge-ray` elements start at the origin along both limits.
inline std::string scatter_svg(const BootstrapScatter& scatter,
                               const ConfidenceWedge* wedge = nullptr,
                               const PreferenceMap* map = nullptr,
                               std::string_view title = "ICE bootstrap scatter") {
  if (scatter.replicates.empty())
    throw Error(ErrorCode::InvalidArgument, "cannot plot an empty scatter");
  using F = detail::PlotFrame;

  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;  // origin always in view
  const auto include = [&](double x, double y) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  };
  include(scatter.observed.x, scatter.observed.y);
  for (const auto& o : scatter.replicates) include(o.x, o.y);
  F frame;
  frame.cx = (x0 + x1) / 2;
  frame.cy = (y0 + y1) / 2;
  frame.half = std::max(x1 - x0, y1 - y0) / 2 * 1.08;
  if (!(frame.half > 0)) frame.half = 1;

  svg::Document doc(F::kWidth, F::kHeight);
  detail::draw_frame(doc, frame, title, detail::axis_label_x(scatter),
                     detail::axis_label_y(scatter));
  doc.raw("<g clip-path=\"url(#plot-area)\">\n");
  doc.line(F::kLeft, frame.py(0), F::kLeft + F::kSide, frame.py(0),
           "class=\"axis\" stroke=\"#999999\"");
  doc.line(frame.px(0), F::kTop, frame.px(0), F::kTop + F::kSide,
           "class=\"axis\" stroke=\"#999999\"");

  std::optional<ColorScale> colors;
  std::vector<double> values;
  if (map) {
    values = preference_values(scatter, *map);
    double scale = 0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    colors.emplace(scale);
  }
  for (std::size_t i = 0; i < scatter.r(); ++i) {
    const auto& o = scatter.replicates[i];
    std::string attrs;
    if (colors) {
      const double v = values[i];
      attrs = fmt::format("class=\"rep {}\" fill=\"{}\" data-pref=\"{:.6g}\"",
                          to_string(ColorScale::band(v)), (*colors)(v).hex(), v);
    } else {
      attrs = "class=\"rep\" fill=\"#4A6FA5\"";
    }
    doc.circle(frame.px(o.x), frame.py(o.y), 1.6, attrs);
  }

  if (wedge) {
    const double length = 4 * frame.half;
    const auto ray = [&](double angle, std::string_view which) {
      doc.line(frame.px(0), frame.py(0),
               frame.px(0) + length * std::cos(angle) * frame.pixels_per_unit(),
               frame.py(0) - length * std::sin(angle) * frame.pixels_per_unit(),
               fmt::format("class=\"wedge-ray\" data-limit=\"{}\" "
                           "data-angle=\"{:.9f}\" stroke=\"#000000\" "
                           "stroke-width=\"1.5\"",
                           which, angle));
    };
    ray(wedge->lower(), "lower");
    ray(wedge->upper(), "upper");
  }
  doc.raw("</g>\n");

  doc.circle(frame.px(0), frame.py(0), 5,
             "class=\"origin\" fill=\"#D62728\" stroke=\"#000000\"");
  doc.circle(frame.px(scatter.observed.x), frame.py(scatter.observed.y), 5,
             "class=\"observed\" fill=\"#1F3FBF\" stroke=\"#000000\"");
  return doc.finish();
}

inline void render_scatter_svg(const BootstrapScatter& scatter,
                               const ConfidenceWedge* wedge,
                               const PreferenceMap* map,
                               const std::string& path,
                               std::string_view title = "ICE bootstrap scatter") {
  csv::write_text_file(path, scatter_svg(scatter, wedge, map, title));
}

// ---------------------------------------------------------------------------
// Histogram plot: `rect.bar` per bin with data-count, heights proportional to
// counts; `line.zero-line` when zero lies within the bin range.

inline std::string histogram_svg(const Histogram& h,
                                 std::string_view title = "Preference histogram",
                                 std::string_view xlabel = "Preference for New") {
  if (h.counts.empty() || h.bin_edges.size() != h.counts.size() + 1)
    throw Error(ErrorCode::InvalidArgument, "malformed histogram");
  constexpr double kLeft = 80, kTop = 50, kW = 520, kH = 360;
  const double lo = h.bin_edges.front(), hi = h.bin_edges.back();
  const auto px = [&](double v) { return kLeft + (v - lo) / (hi - lo) * kW; };
  const std::size_t peak =
      std::max<std::size_t>(1, *std::max_element(h.counts.begin(), h.counts.end()));

  svg::Document doc(kLeft + kW + 30, kTop + kH + 80);
  doc.text(kLeft + kW / 2, kTop - 20, title,
           "class=\"title\" font-size=\"16\" text-anchor=\"middle\"");
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double height = kH * static_cast<double>(h.counts[i]) /
                          static_cast<double>(peak);
    const double x = px(h.bin_edges[i]);
    const double w = px(h.bin_edges[i + 1]) - x;
    doc.rect(x, kTop + kH - height, w, height,
             fmt::format("class=\"bar\" data-count=\"{}\" fill=\"{}\" "
                         "stroke=\"#FFFFFF\" stroke-width=\"0.5\"",
                         h.counts[i],
                         h.bin_edges[i] >= 0 ? "#6BAF5B" : "#C8553D"));
  }
  doc.line(kLeft, kTop + kH, kLeft + kW, kTop + kH,
           "class=\"axis\" stroke=\"#333333\"");
  doc.line(kLeft, kTop, kLeft, kTop + kH, "class=\"axis\" stroke=\"#333333\"");
  if (lo <= 0.0 && 0.0 <= hi)
    doc.line(px(0.0), kTop, px(0.0), kTop + kH,
             "class=\"zero-line\" stroke=\"#000000\" stroke-dasharray=\"4 3\"");

  const std::size_t label_every = std::max<std::size_t>(1, h.counts.size() / 5);
  for (std::size_t i = 0; i < h.bin_edges.size(); i += label_every)
    doc.text(px(h.bin_edges[i]), kTop + kH + 20,
             fmt::format("{:.3g}", h.bin_edges[i]),
             "class=\"tick-label\" font-size=\"12\" text-anchor=\"middle\"");
  for (int k = 0; k <= 4; ++k) {
    const double c = static_cast<double>(peak) * k / 4.0;
    doc.text(kLeft - 8, kTop + kH - kH * k / 4.0 + 4, fmt::format("{:.0f}", c),
             "class=\"tick-label\" font-size=\"12\" text-anchor=\"end\"");
  }
  doc.text(kLeft + kW / 2, kTop + kH + 50, xlabel,
           "class=\"xlabel\" font-size=\"14\" text-anchor=\"middle\"");
  doc.text(20, kTop + kH / 2, "Replications",
           fmt::format("class=\"ylabel\" font-size=\"14\" text-anchor=\"middle\" "
                       "transform=\"rotate(-90 20 {:.3f})\"",
                       kTop + kH / 2));
  return doc.finish();
}

inline void render_histogram_svg(const Histogram& h, const std::string& path,
                                 std::string_view title = "Preference histogram") {
  csv::write_text_file(path, histogram_svg(h, title));
}

// ---------------------------------------------------------------------------
// Text report.

struct ArmSummary {
  Arm arm = Arm::Std;
  std::size_t n = 0;
  SummaryStats effe, cost;
};

inline ArmSummary summarize_arm(const ArmSample& sample) {
  return {sample.arm(), sample.size(), summarize(sample, Variable::Effe),
          summarize(sample, Variable::Cost)};
}

struct StudyResults {
  ArmSummary std_arm, new_arm;
  std::optional<ScaleResult> scale;  ///< set when lambda was chosen from data
  ShadowPrice lambda{1.0};
  BootstrapScatter scatter;
  ConfidenceWedge wedge;
  QuadrantCounts quadrants;
  PreferenceMap linear_map = PreferenceMap::net_benefit();
  PreferenceMap nonlinear_map = PreferenceMap::ice_omega();
  Histogram linear_hist, nonlinear_hist;
};

namespace detail {

inline constexpr double kDegPerRad = 180.0 / kPi;

inline std::string summary_line(std::string_view label, const SummaryStats& s) {
  return fmt::format(
      "    {:<5} min {:>10.4g}  q1 {:>10.4g}  median {:>10.4g}  mean {:>10.4g}  "
      "q3 {:>10.4g}  max {:>10.4g}  sd {:>10.4g}\n",
      label, s.min, s.q1, s.median, s.mean, s.q3, s.max, s.sd);
}

inline std::string verdict(std::string_view name, const PreferenceMap& map,
                           const Histogram& h) {
  return fmt::format(
      "  {} (beta = {:.6g}, gamma = {:.6g}): {} of {} replicate preferences "
      "positive; all positive: {}\n",
      name, map.beta(), map.gamma(), h.positive, h.n,
      h.all_positive ? "yes" : "no");
}

}  // namespace detail

inline std::string study_report(const StudyResults& r) {
  using detail::kDegPerRad;
  const auto& s = r.scatter;
  std::string out;
  out += "ICE study report\n================\n\n";

  out += "Arms\n";
  for (const auto* arm : {&r.std_arm, &r.new_arm}) {
    out += fmt::format("  {} (n = {})\n", to_string(arm->arm), arm->n);
    out += detail::summary_line("effe", arm->effe);
    out += detail::summary_line("cost", arm->cost);
  }

  out += "\nShadow price\n";
  if (r.scale) {
    out += fmt::format(
        "  statistical ratio {:.6g} (rule {}: cost spread {:.6g}, effe spread "
        "{:.6g})\n",
        r.scale->ratio, to_string(r.scale->rule), r.scale->spread_cost,
        r.scale->spread_effe);
  }
  out += fmt::format("  lambda = {} ({})\n",
                     csv::format_double(r.lambda.value()),
                     to_string(r.lambda.source()));

  const auto& o = s.observed;
  out += fmt::format("\nObserved outcome (New - Std, {} perspective)\n",
                     to_string(s.perspective()));
  out += fmt::format("  delta effe = {:.6g}, delta cost = {:.6g}\n", o.delta_e(),
                     o.delta_c());
  out += fmt::format("  plotted (x, y) = ({:.6g}, {:.6g}), ICE angle {:.3f} deg\n",
                     o.x, o.y, r.wedge.center * kDegPerRad);
  if (o.delta_e() != 0.0)
    out += fmt::format("  ICER = {:.6g} cost units per effectiveness unit\n",
                       o.delta_c() / o.delta_e());

  const auto pct = [&](std::size_t k) {
    return 100.0 * static_cast<double>(k) / static_cast<double>(s.r());
  };
  out += fmt::format("\nBootstrap\n  replications {}, seed {}\n", s.r(), s.seed);
  out += fmt::format(
      "  quadrants: SE (more effective, less costly) {:.2f}%, NE {:.2f}%, "
      "NW {:.2f}%, SW {:.2f}%, on an axis {:.2f}%\n",
      pct(r.quadrants.se), pct(r.quadrants.ne), pct(r.quadrants.nw),
      pct(r.quadrants.sw), pct(r.quadrants.boundary + r.quadrants.origin));

  const auto& w = r.wedge;
  out += fmt::format("\nConfidence wedge ({} tails)\n", to_string(w.tails));
  out += fmt::format("  confidence {:g}%\n", w.confidence * 100.0);
  out += fmt::format(
      "  centre {:.3f} deg, limits [{:.3f}, {:.3f}] deg, half-angle {:.3f} deg\n",
      w.center * kDegPerRad, w.lower() * kDegPerRad, w.upper() * kDegPerRad,
      w.half_angle * kDegPerRad);
  out += fmt::format(
      "  below lower limit (clockwise) {}, above upper limit "
      "(counter-clockwise) {}, inside {}, at origin {}\n",
      w.count_below, w.count_above, w.count_inside, w.count_origin);
  out += fmt::format("  tails total {} of {} replications\n",
                     w.count_below + w.count_above, w.r);

  out += "\nPreference verdicts\n";
  out += detail::verdict("Net Benefit", r.linear_map, r.linear_hist);
  out += detail::verdict("Nonlinear", r.nonlinear_map, r.nonlinear_hist);
  out += fmt::format("  nonlinear map returns to scale: {}; monotone-valid: {}\n",
                     to_string(returns_to_scale(r.nonlinear_map)),
                     r.nonlinear_map.monotone_valid() ? "yes" : "no");
  return out;
}

}  // namespace iceinfer
