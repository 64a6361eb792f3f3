#pragma once

// Cost-effectiveness frontier over a set of treatment options.
//
// An option is strictly dominated when another is at least as effective and
// at most as costly, with one inequality strict. Among the rest, the
// frontier is the lower convex boundary in the (effe, cost) plane; options
// strictly above it are extendedly dominated, i.e. a mixture of their two
// frontier neighbours gives the same effectiveness for less money. Points
// exactly on a frontier segment stay on the frontier.

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "iceinfer/csv.hpp"
#include "iceinfer/error.hpp"

namespace iceinfer {

struct TreatmentOption {
  std::string name;
  double effe = 0.0;
  double cost = 0.0;

  friend bool operator==(const TreatmentOption&,
                         const TreatmentOption&) = default;
};

struct Dominated {
  TreatmentOption option;
  std::string dominator;
};

struct ExtendedlyDominated {
  TreatmentOption option;
  std::string left;   ///< frontier neighbour with lower effectiveness
  std::string right;  ///< frontier neighbour with higher effectiveness
};

struct StrictDominanceResult {
  std::vector<TreatmentOption> kept;
  std::vector<Dominated> dominated;
};

struct FrontierResult {
  std::vector<TreatmentOption> frontier;  ///< increasing effe
  std::vector<Dominated> dominated;
  std::vector<ExtendedlyDominated> extendedly_dominated;

  /// Incremental cost per unit effectiveness between adjacent frontier
  /// options; size frontier.size() - 1 (empty when fewer than two).
  std::vector<double> incremental_ratios() const {
    // Coincident options contribute no step.
    std::vector<double> out;
    for (std::size_t i = 1; i < frontier.size(); ++i)
      if (frontier[i].effe != frontier[i - 1].effe)
        out.push_back((frontier[i].cost - frontier[i - 1].cost) /
                      (frontier[i].effe - frontier[i - 1].effe));
    return out;
  }
};

inline void validate_options(std::span<const TreatmentOption> options) {
  std::set<std::string_view> names;
  for (const auto& o : options) {
    if (!std::isfinite(o.effe) || !std::isfinite(o.cost))
      throw Error(ErrorCode::NonFiniteValue,
                  fmt::format("option '{}' has non-finite coordinates", o.name));
    if (!names.insert(o.name).second)
      throw Error(ErrorCode::DuplicateName,
                  fmt::format("option name '{}' appears twice", o.name));
  }
}

inline bool strictly_dominates(const TreatmentOption& q,
                               const TreatmentOption& p) noexcept {
  return q.effe >= p.effe && q.cost <= p.cost &&
         (q.effe > p.effe || q.cost < p.cost);
}

/// Kept options preserve input order. The recorded dominator is the
/// strongest witness: highest effectiveness, then lowest cost.
inline StrictDominanceResult strict_dominance(
    std::span<const TreatmentOption> options) {
  validate_options(options);
  StrictDominanceResult out;
  for (const auto& p : options) {
    const TreatmentOption* witness = nullptr;
    for (const auto& q : options) {
      if (!strictly_dominates(q, p)) continue;
      if (!witness || q.effe > witness->effe ||
          (q.effe == witness->effe && q.cost < witness->cost) ||
          (q.effe == witness->effe && q.cost == witness->cost &&
           q.name < witness->name))
        witness = &q;
    }
    if (witness)
      out.dominated.push_back({p, witness->name});
    else
      out.kept.push_back(p);
  }
  return out;
}

namespace detail {
/// Positive when `p` lies strictly above the line through a and b (a.effe <
/// b.effe), zero when on it.
inline double height_above(const TreatmentOption& a, const TreatmentOption& b,
                           const TreatmentOption& p) noexcept {
  return (p.cost - a.cost) * (b.effe - a.effe) -
         (b.cost - a.cost) * (p.effe - a.effe);
}
}  // namespace detail

/// Lower convex boundary of options that survived strict dominance.
inline FrontierResult extended_dominance(
    std::span<const TreatmentOption> kept) {
  validate_options(kept);
  std::vector<TreatmentOption> pts(kept.begin(), kept.end());
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    if (a.effe != b.effe) return a.effe < b.effe;
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.name < b.name;
  });

  // Monotone chain over distinct coordinates; a middle point is dropped only
  // when strictly above the chord, so collinear points remain on the frontier.
  const auto same = [](const TreatmentOption& a, const TreatmentOption& b) {
    return a.effe == b.effe && a.cost == b.cost;
  };
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0 && same(pts[i], pts[i - 1])) continue;
    while (hull.size() >= 2) {
      const auto& a = pts[hull[hull.size() - 2]];
      const auto& m = pts[hull.back()];
      const auto& b = pts[i];
      if (b.effe > a.effe && detail::height_above(a, b, m) > 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }

  FrontierResult out;
  std::vector<bool> on_hull(pts.size(), false);
  for (std::size_t i : hull) on_hull[i] = true;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (same(pts[i], pts[i - 1])) on_hull[i] = on_hull[i - 1];
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (on_hull[i]) out.frontier.push_back(pts[i]);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (on_hull[i]) continue;
    // Bracketing frontier neighbours by effectiveness; among coincident
    // neighbours the first by name.
    const TreatmentOption* left = nullptr;
    const TreatmentOption* right = nullptr;
    for (const auto& f : out.frontier) {
      if (f.effe <= pts[i].effe && (!left || f.effe > left->effe)) left = &f;
      if (f.effe >= pts[i].effe && !right) right = &f;
    }
    out.extendedly_dominated.push_back(
        {pts[i], left ? left->name : std::string{},
         right ? right->name : std::string{}});
  }
  return out;
}

/// Strict dominance followed by extended dominance.
inline FrontierResult compute_frontier(
    std::span<const TreatmentOption> options) {
  auto strict = strict_dominance(options);
  auto result = extended_dominance(strict.kept);
  result.dominated = std::move(strict.dominated);
  return result;
}

struct MixtureComparison {
  double weight_left = 0.0;  ///< share of the left option in the mixture
  double mixture_cost = 0.0;
  double cost_saving = 0.0;  ///< target cost minus mixture cost
};

/// Mixture of `left` and `right` matching the target's effectiveness.
/// A positive saving means the target is extendedly dominated.
inline MixtureComparison mixture_compare(const TreatmentOption& target,
                                         const TreatmentOption& left,
                                         const TreatmentOption& right) {
  if (!(left.effe < target.effe && target.effe < right.effe))
    throw Error(ErrorCode::OutsideBracket,
                fmt::format("'{}' (effe {}) is not strictly between '{}' and "
                            "'{}'",
                            target.name, target.effe, left.name, right.name));
  MixtureComparison m;
  m.weight_left = (right.effe - target.effe) / (right.effe - left.effe);
  m.mixture_cost = m.weight_left * left.cost + (1.0 - m.weight_left) * right.cost;
  m.cost_saving = target.cost - m.mixture_cost;
  return m;
}

// `name,effe,cost`
inline std::vector<TreatmentOption> read_options_csv(std::istream& in) {
  const auto lines = csv::read_lines(in);
  if (lines.rows.empty()) throw Error(ErrorCode::EmptyFile, "options file is empty");
  const auto header = csv::split(lines.rows.front());
  const auto col = csv::locate_columns<3>(header, {"name", "effe", "cost"});
  std::vector<TreatmentOption> out;
  for (std::size_t i = 1; i < lines.rows.size(); ++i) {
    const auto cells = csv::split(lines.rows[i]);
    if (std::max({col[0], col[1], col[2]}) >= cells.size())
      throw Error(ErrorCode::NonNumericCell,
                  fmt::format("row {}: missing cell", i), i);
    const auto e = csv::parse_double(cells[col[1]]);
    const auto c = csv::parse_double(cells[col[2]]);
    if (!e || !c)
      throw Error(ErrorCode::NonNumericCell,
                  fmt::format("row {}: non-numeric effe or cost", i), i);
    out.push_back({std::string(cells[col[0]]), *e, *c});
  }
  if (out.empty()) throw Error(ErrorCode::EmptyFile, "options file has no rows");
  validate_options(out);
  return out;
}

inline std::vector<TreatmentOption> read_options_csv(const std::string& path) {
  auto in = csv::open_input(path);
  return read_options_csv(in);
}

}  // namespace iceinfer
