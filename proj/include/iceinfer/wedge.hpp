#pragma once

// Wedge-shaped (angular) confidence regions on the ICE plane.
//
// Angles are polar angles atan2(y, x) in (-pi, pi], measured about the ICE
// origin. The default wedge is symmetric about the observed ray: its
// half-angle h is the smallest value with at least ceil(confidence * r)
// replicates inside |deviation| <= h. Tail counts then sum to r - inside,
// but the clockwise/counter-clockwise split is whatever the data give.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "iceinfer/bootstrap.hpp"
#include "iceinfer/error.hpp"
#include "iceinfer/scale.hpp"

namespace iceinfer {

inline constexpr double kPi = std::numbers::pi;

/// Maps any angle difference into (-pi, pi].
inline double wrap_angle(double a) noexcept {
  a = std::remainder(a, 2.0 * kPi);  // [-pi, pi]
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

inline double ice_angle(double x, double y) {
  if (x == 0.0 && y == 0.0)
    throw Error(ErrorCode::OriginPoint, "the ICE origin has no angle");
  return std::atan2(y, x);
}

inline double ice_angle(const IceOutcome& o) { return ice_angle(o.x, o.y); }

enum class TailRule {
  Symmetric,  ///< symmetric half-angle about the observed ray
  Equal,      ///< equal replicate counts in both tails
};

constexpr std::string_view to_string(TailRule t) noexcept {
  return t == TailRule::Symmetric ? "symmetric" : "equal";
}

struct ConfidenceWedge {
  double center = 0.0;      ///< observed ICE angle
  double lower_dev = 0.0;   ///< clockwise limit, as a deviation from center
  double upper_dev = 0.0;   ///< counter-clockwise limit, deviation from center
  double half_angle = 0.0;  ///< (upper_dev - lower_dev) / 2
  double confidence = 0.95;
  TailRule tails = TailRule::Symmetric;
  std::size_t count_below = 0;
  std::size_t count_above = 0;
  std::size_t count_inside = 0;  ///< angular replicates within the limits
  std::size_t count_origin = 0;  ///< replicates exactly at (0, 0)
  std::size_t r = 0;

  double lower() const noexcept { return wrap_angle(center + lower_dev); }
  double upper() const noexcept { return wrap_angle(center + upper_dev); }

  /// Whether a ray at `angle` lies inside the wedge (limits inclusive).
  bool contains(double angle) const noexcept {
    const double d = wrap_angle(angle - center);
    return d >= lower_dev && d <= upper_dev;
  }
};

/// Number of replicates the wedge must cover.
inline std::size_t required_inside(double confidence, std::size_t r) {
  // The small guard absorbs representation error such as 0.95 * 25000.
  const double target = confidence * static_cast<double>(r);
  return static_cast<std::size_t>(std::ceil(target - 1e-9 * target));
}

/// Origin replicates count toward coverage but not toward count_inside.
inline ConfidenceWedge compute_wedge(const BootstrapScatter& scatter,
                                     double confidence,
                                     TailRule tails = TailRule::Symmetric) {
  if (!(confidence >= 0.5 && confidence < 1.0))
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("confidence must lie in [0.5, 1), got {}",
                            confidence));
  if (scatter.replicates.empty())
    throw Error(ErrorCode::InvalidArgument, "scatter has no replicates");
  if (scatter.observed.x == 0.0 && scatter.observed.y == 0.0)
    throw Error(ErrorCode::OriginObserved,
                "observed outcome is the ICE origin; no wedge centre");

  ConfidenceWedge w;
  w.center = ice_angle(scatter.observed);
  w.confidence = confidence;
  w.tails = tails;
  w.r = scatter.r();

  std::vector<double> dev;
  dev.reserve(w.r);
  for (const auto& o : scatter.replicates) {
    if (o.x == 0.0 && o.y == 0.0) {
      ++w.count_origin;
      continue;
    }
    dev.push_back(wrap_angle(std::atan2(o.y, o.x) - w.center));
  }

  const std::size_t need = required_inside(confidence, w.r);
  const std::size_t need_angular =
      need > w.count_origin ? need - w.count_origin : 0;

  if (tails == TailRule::Symmetric) {
    double h = 0.0;
    if (need_angular > 0) {
      std::vector<double> mag(dev.size());
      std::transform(dev.begin(), dev.end(), mag.begin(),
                     [](double d) { return std::abs(d); });
      std::nth_element(mag.begin(), mag.begin() + (need_angular - 1),
                       mag.end());
      h = mag[need_angular - 1];
    }
    if (h >= kPi)
      throw Error(ErrorCode::WedgeDegenerate,
                  "replicates surround the origin; no wedge narrower than a "
                  "half-plane reaches the requested confidence");
    w.lower_dev = -h;
    w.upper_dev = h;
    w.half_angle = h;
  } else {
    std::sort(dev.begin(), dev.end());
    const std::size_t outside = dev.size() - need_angular;
    const std::size_t below = outside / 2;
    const std::size_t above = outside - below;
    if (need_angular == 0) {
      w.lower_dev = w.upper_dev = 0.0;
    } else {
      w.lower_dev = dev[below];
      w.upper_dev = dev[dev.size() - 1 - above];
    }
    w.half_angle = (w.upper_dev - w.lower_dev) / 2.0;
    if (w.half_angle >= kPi)
      throw Error(ErrorCode::WedgeDegenerate,
                  "equal-tail wedge spans the whole plane");
  }

  for (double d : dev) {
    if (d < w.lower_dev)
      ++w.count_below;
    else if (d > w.upper_dev)
      ++w.count_above;
    else
      ++w.count_inside;
  }
  return w;
}

// ---------------------------------------------------------------------------

struct QuadrantCounts {
  std::size_t se = 0;  ///< x > 0, y < 0: more effective, less costly
  std::size_t ne = 0;  ///< x > 0, y > 0
  std::size_t nw = 0;  ///< x < 0, y > 0: less effective, more costly
  std::size_t sw = 0;  ///< x < 0, y < 0
  std::size_t boundary = 0;  ///< on an axis, origin excluded
  std::size_t origin = 0;

  std::size_t total() const noexcept {
    return se + ne + nw + sw + boundary + origin;
  }
};

inline QuadrantCounts quadrant_counts(const BootstrapScatter& scatter) {
  QuadrantCounts q;
  for (const auto& o : scatter.replicates) {
    if (o.x == 0.0 && o.y == 0.0)
      ++q.origin;
    else if (o.x == 0.0 || o.y == 0.0)
      ++q.boundary;
    else if (o.x > 0.0)
      ++(o.y < 0.0 ? q.se : q.ne);
    else
      ++(o.y > 0.0 ? q.nw : q.sw);
  }
  return q;
}

}  // namespace iceinfer
