#pragma once

// End-to-end study pipeline behind `ice report`.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "iceinfer/bootstrap.hpp"
#include "iceinfer/data_model.hpp"
#include "iceinfer/error.hpp"
#include "iceinfer/preference.hpp"
#include "iceinfer/report.hpp"
#include "iceinfer/scale.hpp"
#include "iceinfer/wedge.hpp"

namespace iceinfer {

struct RunConfig {
  std::string input;
  std::size_t reps = 25000;
  std::uint64_t seed = 42;
  std::optional<double> lambda;  ///< empty = choose from the data
  ScaleRule scale_rule = ScaleRule::StandardError;
  Perspective perspective = Perspective::Alias;
  double confidence = 0.95;
  double beta = 1.0;
  double gamma = omega();
  TailRule tails = TailRule::Symmetric;
  std::size_t bins = kDefaultBins;
  std::string outdir = ".";
  unsigned threads = 0;  ///< 0 = default_thread_count()

  void validate() const {
    const auto bad = [](const std::string& m) {
      return Error(ErrorCode::InvalidArgument, m);
    };
    if (input.empty()) throw bad("an input file is required");
    if (reps < kMinReplicates)
      throw Error(ErrorCode::BadReplicationCount,
                  fmt::format("need at least {} replications, got {}",
                              kMinReplicates, reps));
    if (lambda && !(*lambda > 0.0 && std::isfinite(*lambda)))
      throw bad("lambda must be positive and finite");
    if (!(confidence >= 0.5 && confidence < 1.0))
      throw bad("confidence must lie in [0.5, 1)");
    if (!(beta > 0.0) || !(gamma > 0.0))
      throw Error(ErrorCode::InvalidMap, "beta and gamma must be positive");
    if (bins == 0) throw bad("bins must be positive");
  }
};

struct Study {
  StudyResults results;
  std::string report_text;
};

/// Runs every computation of the report without touching the filesystem
/// beyond reading the input.
inline Study run_study(const RunConfig& cfg) {
  cfg.validate();
  const auto data = ingest_csv(cfg.input);

  std::optional<ScaleResult> scale;
  ShadowPrice lambda{1.0};
  if (cfg.lambda) {
    lambda = ShadowPrice(*cfg.lambda, LambdaSource::UserSupplied);
  } else {
    scale = ice_scale(data.std_arm, data.new_arm, cfg.scale_rule);
    lambda = scale->recommended;
  }

  auto scatter = resample(data, cfg.reps, cfg.seed, lambda, cfg.perspective,
                          cfg.threads);
  const auto wedge = compute_wedge(scatter, cfg.confidence, cfg.tails);
  const auto linear = PreferenceMap::net_benefit(lambda);
  const PreferenceMap nonlinear(cfg.beta, cfg.gamma, lambda);

  Study study{
      StudyResults{summarize_arm(data.std_arm), summarize_arm(data.new_arm),
                   scale, lambda, std::move(scatter), wedge, {}, linear,
                   nonlinear, {}, {}},
      {}};
  auto& r = study.results;
  r.quadrants = quadrant_counts(r.scatter);
  r.linear_hist = preference_histogram(r.scatter, linear, cfg.bins);
  r.nonlinear_hist = preference_histogram(r.scatter, nonlinear, cfg.bins);
  study.report_text = study_report(r);
  return study;
}

inline const std::vector<std::string>& report_file_names() {
  static const std::vector<std::string> names{
      "report.txt",    "scatter.svg",  "wedge_nb.svg", "wedge_omega.svg",
      "hist_nb.svg",   "hist_omega.svg", "scatter.csv"};
  return names;
}

/// Writes the seven report files into cfg.outdir (created when missing).
inline Study run_report(const RunConfig& cfg) {
  auto study = run_study(cfg);
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.outdir, ec);
  if (ec)
    throw Error(ErrorCode::IoError,
                fmt::format("cannot create '{}': {}", cfg.outdir, ec.message()));
  const auto path = [&](const char* name) {
    return (fs::path(cfg.outdir) / name).string();
  };
  const auto& r = study.results;
  csv::write_text_file(path("report.txt"), study.report_text);
  write_scatter_csv(path("scatter.csv"), r.scatter);
  render_scatter_svg(r.scatter, &r.wedge, nullptr, path("scatter.svg"),
                     "Bootstrap scatter with confidence wedge");
  render_scatter_svg(r.scatter, &r.wedge, &r.linear_map, path("wedge_nb.svg"),
                     "Wedge coloured by Net Benefit preference");
  render_scatter_svg(r.scatter, &r.wedge, &r.nonlinear_map,
                     path("wedge_omega.svg"),
                     fmt::format("Wedge coloured by nonlinear preference "
                                 "(beta = {:.4g}, gamma = {:.4g})",
                                 r.nonlinear_map.beta(), r.nonlinear_map.gamma()));
  render_histogram_svg(r.linear_hist, path("hist_nb.svg"),
                       "Net Benefit preferences");
  render_histogram_svg(r.nonlinear_hist, path("hist_omega.svg"),
                       "Nonlinear preferences");
  return study;
}

}  // namespace iceinfer
