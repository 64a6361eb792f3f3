#pragma once

// Two-parameter family of ICE preference maps
//
//   P(x, y) = (x^2 + y^2)^((beta - gamma)/2) * [x - y]^gamma
//
// where [z]^c = sign(z) |z|^c is the signed power. beta sets returns to scale
// (P(fx, fy) = f^beta P(x, y)), gamma the nonlinearity. Monotonicity in
// (x up, y down) holds iff 1/Omega <= gamma/beta <= Omega, Omega = (1+sqrt 2)^2.
// The proportionality constant is 1; values are ordinal.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "iceinfer/error.hpp"
#include "iceinfer/scale.hpp"

namespace iceinfer {

inline double signed_power(double z, double c) noexcept {
  if (z > 0.0) return std::pow(z, c);
  if (z < 0.0) return -std::pow(-z, c);
  return 0.0;
}

inline double omega() noexcept {
  const double a = 1.0 + std::sqrt(2.0);
  return a * a;
}

struct OmegaBounds {
  double lower;
  double upper;
};

inline OmegaBounds omega_bounds() noexcept {
  const double w = omega();
  return {1.0 / w, w};
}

enum class ReturnsToScale { Decreasing, Constant, Increasing };

constexpr std::string_view to_string(ReturnsToScale r) noexcept {
  switch (r) {
    case ReturnsToScale::Decreasing: return "decreasing";
    case ReturnsToScale::Constant: return "constant";
    case ReturnsToScale::Increasing: return "increasing";
  }
  return "unknown";
}

class PreferenceMap {
 public:
  PreferenceMap(double beta, double gamma, ShadowPrice lambda = ShadowPrice{1.0})
      : beta_(beta), gamma_(gamma), lambda_(lambda) {
    if (!(beta > 0.0) || !(gamma > 0.0) || !std::isfinite(beta) ||
        !std::isfinite(gamma))
      throw Error(ErrorCode::InvalidMap,
                  fmt::format("beta and gamma must be positive and finite "
                              "(beta={}, gamma={})",
                              beta, gamma));
  }

  static PreferenceMap net_benefit(ShadowPrice lambda = ShadowPrice{1.0}) {
    return PreferenceMap(1.0, 1.0, lambda);
  }
  /// Most nonlinear map that is still monotone at linear returns.
  static PreferenceMap ice_omega(ShadowPrice lambda = ShadowPrice{1.0}) {
    return PreferenceMap(1.0, omega(), lambda);
  }

  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  const ShadowPrice& lambda() const noexcept { return lambda_; }
  double ratio() const noexcept { return gamma_ / beta_; }

  /// True iff 1/Omega <= gamma/beta <= Omega.
  bool monotone_valid() const noexcept {
    const auto [lo, hi] = omega_bounds();
    const double r = ratio();
    return r >= lo && r <= hi;
  }

  /// Preference for the New treatment at (x, y); positive favours New.
  /// Points with x == y (the origin included) map to exactly 0. For
  /// beta < gamma, |P| grows without bound approaching the origin along
  /// directions away from x == y.
  double operator()(double x, double y) const noexcept {
    if (x == y) return 0.0;
    const double radial = std::pow(std::hypot(x, y), beta_ - gamma_);
    return radial * signed_power(x - y, gamma_);
  }

 private:
  double beta_;
  double gamma_;
  ShadowPrice lambda_;
};

inline double evaluate(const PreferenceMap& map, double x, double y) noexcept {
  return map(x, y);
}

inline double evaluate(const PreferenceMap& map, const IceOutcome& o) noexcept {
  return map(o.x, o.y);
}

inline ReturnsToScale returns_to_scale(const PreferenceMap& map) noexcept {
  if (map.beta() < 1.0) return ReturnsToScale::Decreasing;
  if (map.beta() > 1.0) return ReturnsToScale::Increasing;
  return ReturnsToScale::Constant;
}

// ---------------------------------------------------------------------------
// Axiom checks over a finite point set.

struct GridPoint {
  double x;
  double y;
};

/// n x n evenly spaced points over [-range, range]^2.
inline std::vector<GridPoint> square_grid(std::size_t n = 41,
                                          double range = 2.0) {
  if (n < 2 || !(range > 0.0))
    throw Error(ErrorCode::InvalidArgument, "grid needs n >= 2 and range > 0");
  std::vector<double> axis(n);
  for (std::size_t i = 0; i < n; ++i)
    axis[i] = -range + 2.0 * range * static_cast<double>(i) /
                           static_cast<double>(n - 1);
  std::vector<GridPoint> grid;
  grid.reserve(n * n);
  for (double x : axis)
    for (double y : axis) grid.push_back({x, y});
  return grid;
}

inline bool nearly_equal(double a, double b, double rel_tol) noexcept {
  if (a == b) return true;
  return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}

struct AxiomResult {
  std::string_view name;
  bool passed = true;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;  // empty when passed
};

struct AxiomReport {
  AxiomResult direction{"indifference and direction"};
  AxiomResult monotonicity{"monotonicity"};
  AxiomResult relabeling{"re-labeling"};
  AxiomResult symmetry{"symmetry and anti-symmetry"};

  bool all_passed() const noexcept {
    return direction.passed && monotonicity.passed && relabeling.passed &&
           symmetry.passed;
  }
  std::array<const AxiomResult*, 4> results() const noexcept {
    return {&direction, &monotonicity, &relabeling, &symmetry};
  }
};

namespace detail {

template <typename Describe>
void record(AxiomResult& r, bool ok, Describe&& describe) {
  ++r.checks;
  if (ok) return;
  ++r.failures;
  if (r.passed) r.first_failure = describe();
  r.passed = false;
}

inline int sign_of(double v) noexcept { return (v > 0) - (v < 0); }

/// Prefix-maximum Fenwick tree (values only grow).
class MaxTree {
 public:
  explicit MaxTree(std::size_t n)
      : value_(n + 1, -HUGE_VAL), arg_(n + 1, 0) {}

  void update(std::size_t pos, double v, std::size_t arg) {
    for (++pos; pos < value_.size(); pos += pos & (~pos + 1)) {
      if (v > value_[pos]) {
        value_[pos] = v;
        arg_[pos] = arg;
      }
    }
  }

  /// Max over positions [0, pos].
  std::pair<double, std::size_t> query(std::size_t pos) const {
    double best = -HUGE_VAL;
    std::size_t arg = 0;
    for (++pos; pos > 0; pos -= pos & (~pos + 1)) {
      if (value_[pos] > best) {
        best = value_[pos];
        arg = arg_[pos];
      }
    }
    return {best, arg};
  }

 private:
  std::vector<double> value_;
  std::vector<std::size_t> arg_;
};

}  // namespace detail

/// Monotonicity over all pairs of `points` (origin excluded): P(x, y) must be
/// at least P(x0, y0) whenever x >= x0 and y <= y0. For every point the
/// maximum over the points it dominates is found with a sweep in x and a
/// Fenwick tree over descending y, so the check is O(n log n) yet exhaustive.
inline void check_monotonicity(const PreferenceMap& map,
                               std::span<const GridPoint> points,
                               double rel_tol, AxiomResult& result) {
  std::vector<GridPoint> pts;
  pts.reserve(points.size());
  for (const auto& p : points)
    if (!(p.x == 0.0 && p.y == 0.0)) pts.push_back(p);
  if (pts.empty()) return;

  std::vector<double> value(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) value[i] = map(pts[i].x, pts[i].y);

  // Rank by descending y: dominated points (y0 >= y) form a prefix.
  std::vector<double> ys;
  ys.reserve(pts.size());
  for (const auto& p : pts) ys.push_back(p.y);
  std::sort(ys.begin(), ys.end(), std::greater<>());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const auto rank_of = [&](double y) {
    return static_cast<std::size_t>(
        std::lower_bound(ys.begin(), ys.end(), y, std::greater<>()) -
        ys.begin());
  };

  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pts[a].x < pts[b].x;
  });

  detail::MaxTree tree(ys.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && pts[order[j]].x == pts[order[i]].x) ++j;
    for (std::size_t k = i; k < j; ++k)
      tree.update(rank_of(pts[order[k]].y), value[order[k]], order[k]);
    for (std::size_t k = i; k < j; ++k) {
      const std::size_t p = order[k];
      const auto [best, arg] = tree.query(rank_of(pts[p].y));
      const double excess = best - value[p];
      const bool ok =
          excess <= rel_tol * std::max(std::abs(best), std::abs(value[p]));
      detail::record(result, ok, [&] {
        return fmt::format("P({}, {}) = {} < P({}, {}) = {}", pts[p].x,
                           pts[p].y, value[p], pts[arg].x, pts[arg].y, best);
      });
    }
    i = j;
  }
}

/// Checks the four coherence axioms on `points`; equalities use relative
/// tolerance `rel_tol`.
inline AxiomReport check_axioms(const PreferenceMap& map,
                                std::span<const GridPoint> points,
                                double rel_tol = 1e-9) {
  AxiomReport report;
  for (const auto& [x, y] : points) {
    const double p = map(x, y);
    const int expected = detail::sign_of(x - y);
    detail::record(report.direction, detail::sign_of(p) == expected, [&] {
      return fmt::format("sign P({}, {}) = {} but sign(x - y) = {}", x, y,
                         detail::sign_of(p), expected);
    });

    const double relabeled = -map(-x, -y);
    detail::record(report.relabeling, nearly_equal(p, relabeled, rel_tol), [&] {
      return fmt::format("P({0}, {1}) = {2} but -P(-{0}, -{1}) = {3}", x, y, p,
                         relabeled);
    });

    const double mirrored = map(-y, -x);
    const double swapped = -map(y, x);
    detail::record(report.symmetry,
                   nearly_equal(p, mirrored, rel_tol) &&
                       nearly_equal(p, swapped, rel_tol),
                   [&] {
                     return fmt::format(
                         "P({0}, {1}) = {2}, P(-{1}, -{0}) = {3}, "
                         "-P({1}, {0}) = {4}",
                         x, y, p, mirrored, swapped);
                   });
  }
  check_monotonicity(map, points, rel_tol, report.monotonicity);
  return report;
}

inline AxiomReport check_axioms(const PreferenceMap& map) {
  const auto grid = square_grid();
  return check_axioms(map, grid);
}

}  // namespace iceinfer
