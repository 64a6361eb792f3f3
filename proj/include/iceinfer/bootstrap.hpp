#pragma once

// Two-sample patient bootstrap on the ICE plane.
//
// Replicate i (0-based) draws from stream_engine(seed, i): first n_Std row
// indices of the Std arm, then n_New row indices of the New arm, each with
// uniform_index. The replicate outcome is the standardized difference of arm
// means (New - Std). Replicates are independent of each other, so the result
// does not depend on the number of worker threads.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "iceinfer/csv.hpp"
#include "iceinfer/data_model.hpp"
#include "iceinfer/error.hpp"
#include "iceinfer/rng.hpp"
#include "iceinfer/scale.hpp"

namespace iceinfer {

inline constexpr std::size_t kMinReplicates = 100;

struct BootstrapScatter {
  IceOutcome observed;
  std::vector<IceOutcome> replicates;
  std::uint64_t seed = 0;

  std::size_t r() const noexcept { return replicates.size(); }
  const ShadowPrice& lambda() const noexcept { return observed.lambda; }
  Perspective perspective() const noexcept { return observed.perspective; }
};

struct MeanDifference {
  double delta_e;
  double delta_c;
};

inline MeanDifference observed_difference(const ArmSample& std_arm,
                                          const ArmSample& new_arm) {
  return {new_arm.mean(Variable::Effe) - std_arm.mean(Variable::Effe),
          new_arm.mean(Variable::Cost) - std_arm.mean(Variable::Cost)};
}

namespace detail {

inline void resampled_means(std::span<const PatientRecord> rows, Engine& engine,
                            double& mean_e, double& mean_c) {
  const auto n = static_cast<std::uint64_t>(rows.size());
  double sum_e = 0.0, sum_c = 0.0;
  for (std::uint64_t k = 0; k < n; ++k) {
    const auto& r = rows[uniform_index(engine, n)];
    sum_e += r.effe;
    sum_c += r.cost;
  }
  mean_e = sum_e / static_cast<double>(n);
  mean_c = sum_c / static_cast<double>(n);
}

}  // namespace detail

/// Difference of resampled means for replicate `index`.
inline MeanDifference replicate_difference(const ArmSample& std_arm,
                                           const ArmSample& new_arm,
                                           std::uint64_t seed,
                                           std::uint64_t index) {
  auto engine = stream_engine(seed, index);
  double se, sc, ne, nc;
  detail::resampled_means(std_arm.records(), engine, se, sc);
  detail::resampled_means(new_arm.records(), engine, ne, nc);
  return {ne - se, nc - sc};
}

/// `threads` == 0 picks default_thread_count().
inline BootstrapScatter resample(const ArmSample& std_arm,
                                 const ArmSample& new_arm, std::size_t r,
                                 std::uint64_t seed, ShadowPrice lambda,
                                 Perspective perspective,
                                 unsigned threads = 0) {
  if (r < kMinReplicates)
    throw Error(ErrorCode::BadReplicationCount,
                fmt::format("need at least {} replications, got {}",
                            kMinReplicates, r));
  const auto obs = observed_difference(std_arm, new_arm);

  BootstrapScatter scatter;
  scatter.seed = seed;
  scatter.observed = standardize(obs.delta_e, obs.delta_c, lambda, perspective);
  scatter.replicates.assign(r, scatter.observed);

  const auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto d = replicate_difference(std_arm, new_arm, seed, i);
      scatter.replicates[i] =
          standardize(d.delta_e, d.delta_c, lambda, perspective);
    }
  };

  if (threads == 0) threads = default_thread_count();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, r));
  if (threads <= 1) {
    work(0, r);
    return scatter;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  const std::size_t chunk = (r + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(r, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(work, begin, end);
  }
  pool.clear();  // joins
  return scatter;
}

inline BootstrapScatter resample(const TwoArmData& data, std::size_t r,
                                 std::uint64_t seed, ShadowPrice lambda,
                                 Perspective perspective,
                                 unsigned threads = 0) {
  return resample(data.std_arm, data.new_arm, r, seed, lambda, perspective,
                  threads);
}

/// Incremental cost-effectiveness ratio y/x; empty when x == 0. Unstable
/// near x == 0 and blind to the quadrant: (-1, -2) and (1, 2) both give 2.
inline std::optional<double> icer(const IceOutcome& o) noexcept {
  if (o.x == 0.0) return std::nullopt;
  return o.y / o.x;
}

// ---------------------------------------------------------------------------
// Scatter CSV: metadata as '#' comment lines, then `rep,x,y` with rep 1..R.
//
//   # lambda=10
//   # perspective=alias
//   # seed=42
//   # observed=0.347,-0.7677
//   rep,x,y
//   1,0.31,-0.80

inline std::string to_csv(const BootstrapScatter& s) {
  std::string out;
  out.reserve(32 * (s.r() + 6));
  out += fmt::format("# lambda={}\n", csv::format_double(s.lambda().value()));
  out += fmt::format("# perspective={}\n", to_string(s.perspective()));
  out += fmt::format("# seed={}\n", s.seed);
  out += fmt::format("# observed={},{}\n", csv::format_double(s.observed.x),
                     csv::format_double(s.observed.y));
  out += "rep,x,y\n";
  for (std::size_t i = 0; i < s.r(); ++i)
    out += fmt::format("{},{},{}\n", i + 1,
                       csv::format_double(s.replicates[i].x),
                       csv::format_double(s.replicates[i].y));
  return out;
}

inline void write_scatter_csv(const std::string& path,
                              const BootstrapScatter& s) {
  csv::write_text_file(path, to_csv(s));
}

inline BootstrapScatter read_scatter_csv(std::istream& in) {
  const auto lines = csv::read_lines(in);
  if (lines.rows.empty()) throw Error(ErrorCode::EmptyFile, "scatter is empty");

  double lambda = 1.0;
  auto perspective = Perspective::Alias;
  std::uint64_t seed = 0;
  std::optional<std::pair<double, double>> observed;
  for (const auto& c : lines.comments) {
    const auto eq = c.find('=');
    if (eq == std::string::npos) continue;
    const auto key = csv::trim(std::string_view(c).substr(0, eq));
    const auto val = csv::trim(std::string_view(c).substr(eq + 1));
    const auto bad = [&] {
      return Error(ErrorCode::InvalidArgument,
                   fmt::format("bad scatter metadata '{}'", c));
    };
    if (key == "lambda") {
      const auto v = csv::parse_double(val);
      if (!v) throw bad();
      lambda = *v;
    } else if (key == "perspective") {
      if (val == "alias")
        perspective = Perspective::Alias;
      else if (val == "alibi")
        perspective = Perspective::Alibi;
      else
        throw bad();
    } else if (key == "seed") {
      const auto v = csv::parse_uint64(val);
      if (!v) throw bad();
      seed = *v;
    } else if (key == "observed") {
      const auto parts = csv::split(val);
      if (parts.size() != 2) throw bad();
      const auto x = csv::parse_double(parts[0]);
      const auto y = csv::parse_double(parts[1]);
      if (!x || !y) throw bad();
      observed = std::pair{*x, *y};
    }
  }

  const auto header = csv::split(lines.rows.front());
  const auto col = csv::locate_columns<2>(header, {"x", "y"});
  const ShadowPrice price(lambda);
  BootstrapScatter s;
  s.seed = seed;
  s.replicates.reserve(lines.rows.size() - 1);
  for (std::size_t i = 1; i < lines.rows.size(); ++i) {
    const auto cells = csv::split(lines.rows[i]);
    const auto get = [&](std::size_t k) {
      const auto v = col[k] < cells.size() ? csv::parse_double(cells[col[k]])
                                           : std::nullopt;
      if (!v || !std::isfinite(*v))
        throw Error(ErrorCode::NonNumericCell,
                    fmt::format("row {}: bad coordinate", i), i);
      return *v;
    };
    s.replicates.push_back({get(0), get(1), price, perspective});
  }
  if (s.replicates.empty())
    throw Error(ErrorCode::EmptyFile, "scatter has no replicates");
  if (!observed)
    throw Error(ErrorCode::MissingColumn,
                "scatter metadata lacks '# observed=x,y'");
  s.observed = {observed->first, observed->second, price, perspective};
  return s;
}

inline BootstrapScatter read_scatter_csv(const std::string& path) {
  auto in = csv::open_input(path);
  return read_scatter_csv(in);
}

}  // namespace iceinfer
