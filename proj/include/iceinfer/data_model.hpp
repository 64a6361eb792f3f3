#pragma once

// Two-arm patient data: records, per-arm samples, six-number summaries, CSV
// ingestion and a synthetic demo-data generator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "iceinfer/csv.hpp"
#include "iceinfer/error.hpp"
#include "iceinfer/rng.hpp"

namespace iceinfer {

enum class Arm { Std = 0, New = 1 };

constexpr std::string_view to_string(Arm arm) noexcept {
  return arm == Arm::Std ? "Std" : "New";
}

enum class Variable { Effe, Cost };

constexpr std::string_view to_string(Variable v) noexcept {
  return v == Variable::Effe ? "effe" : "cost";
}

struct PatientRecord {
  Arm arm = Arm::Std;
  double effe = 0.0;
  double cost = 0.0;

  double value(Variable v) const noexcept {
    return v == Variable::Effe ? effe : cost;
  }

  friend bool operator==(const PatientRecord&, const PatientRecord&) = default;
};

/// Patients of one treatment arm, in input order. Holds at least two records,
/// all from the same arm, all finite.
class ArmSample {
 public:
  ArmSample(Arm arm, std::vector<PatientRecord> records)
      : arm_(arm), records_(std::move(records)) {
    if (records_.size() < 2)
      throw Error(ErrorCode::ArmTooSmall,
                  fmt::format("arm {} has {} patient(s); at least 2 required",
                              to_string(arm_), records_.size()));
    for (const auto& r : records_) {
      if (r.arm != arm_)
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("record from arm {} placed in arm {}",
                                to_string(r.arm), to_string(arm_)));
      if (!std::isfinite(r.effe) || !std::isfinite(r.cost))
        throw Error(ErrorCode::NonFiniteValue, "non-finite effe or cost");
    }
  }

  Arm arm() const noexcept { return arm_; }
  std::size_t size() const noexcept { return records_.size(); }
  std::span<const PatientRecord> records() const noexcept { return records_; }

  std::vector<double> values(Variable v) const {
    std::vector<double> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.value(v));
    return out;
  }

  double mean(Variable v) const noexcept {
    double sum = 0.0;
    for (const auto& r : records_) sum += r.value(v);
    return sum / static_cast<double>(records_.size());
  }

 private:
  Arm arm_;
  std::vector<PatientRecord> records_;
};

struct TwoArmData {
  ArmSample std_arm;
  ArmSample new_arm;
};

struct SummaryStats {
  std::size_t n = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double sd = 0.0;
};

/// Quantile by linear interpolation between order statistics at
/// h = (n-1)p + 1 (1-based). `sorted` must be ascending and non-empty.
inline double quantile_sorted(std::span<const double> sorted, double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double sample_mean(std::span<const double> values) noexcept {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

/// Sample standard deviation, divisor n-1, two-pass.
inline double sample_sd(std::span<const double> values) noexcept {
  const double m = sample_mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

inline SummaryStats summarize(std::span<const double> values) {
  if (values.size() < 2)
    throw Error(ErrorCode::ArmTooSmall,
                "at least 2 observations are needed for a summary");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  SummaryStats s;
  s.n = sorted.size();
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  // Mean and SD over the sorted copy so the result is independent of input
  // order down to the last bit.
  s.mean = std::clamp(sample_mean(sorted), s.min, s.max);
  s.sd = sample_sd(sorted);
  return s;
}

inline SummaryStats summarize(const ArmSample& sample, Variable v) {
  return summarize(sample.values(v));
}

// ---------------------------------------------------------------------------
// CSV: header `trtm,effe,cost`, trtm 0 = Std, 1 = New.

inline TwoArmData ingest_csv(std::istream& in) {
  const auto lines = csv::read_lines(in);
  if (lines.rows.empty()) throw Error(ErrorCode::EmptyFile, "input is empty");

  const auto header = csv::split(lines.rows.front());
  const auto col = csv::locate_columns<3>(header, {"trtm", "effe", "cost"});

  std::vector<PatientRecord> std_rows, new_rows;
  for (std::size_t i = 1; i < lines.rows.size(); ++i) {
    const std::size_t row = i;  // 1-based data row
    const auto cells = csv::split(lines.rows[i]);
    const auto cell = [&](std::size_t k) -> std::string_view {
      if (col[k] >= cells.size())
        throw Error(ErrorCode::NonNumericCell,
                    fmt::format("row {}: missing cell", row), row);
      return cells[col[k]];
    };
    const auto number = [&](std::size_t k) {
      const auto parsed = csv::parse_double(cell(k));
      if (!parsed)
        throw Error(ErrorCode::NonNumericCell,
                    fmt::format("row {}: '{}' is not a number", row, cell(k)),
                    row);
      if (!std::isfinite(*parsed))
        throw Error(ErrorCode::NonFiniteValue,
                    fmt::format("row {}: non-finite value", row), row);
      return *parsed;
    };
    const double code = number(0);
    const double effe = number(1);
    const double cost = number(2);
    if (code == 0.0)
      std_rows.push_back({Arm::Std, effe, cost});
    else if (code == 1.0)
      new_rows.push_back({Arm::New, effe, cost});
    else
      throw Error(ErrorCode::UnknownArmCode,
                  fmt::format("row {}: unknown arm code '{}'", row, cell(0)),
                  row);
  }
  if (std_rows.empty() && new_rows.empty())
    throw Error(ErrorCode::EmptyFile, "input has a header but no data rows");
  return TwoArmData{ArmSample(Arm::Std, std::move(std_rows)),
                    ArmSample(Arm::New, std::move(new_rows))};
}

inline TwoArmData ingest_csv(const std::string& path) {
  auto in = csv::open_input(path);
  return ingest_csv(in);
}

inline std::string to_csv(std::span<const PatientRecord> records) {
  std::string out = "trtm,effe,cost\n";
  for (const auto& r : records)
    out += fmt::format("{},{},{}\n", static_cast<int>(r.arm),
                       csv::format_double(r.effe), csv::format_double(r.cost));
  return out;
}

inline std::string to_csv(const TwoArmData& data) {
  std::vector<PatientRecord> all(data.std_arm.records().begin(),
                                 data.std_arm.records().end());
  all.insert(all.end(), data.new_arm.records().begin(),
             data.new_arm.records().end());
  return to_csv(all);
}

inline void write_csv(const std::string& path,
                      std::span<const PatientRecord> records) {
  csv::write_text_file(path, to_csv(records));
}

// ---------------------------------------------------------------------------
// Synthetic demo data.
//
// Per patient, with unit-scale gamma variates S ~ G(k_s), A ~ G(k_e - k_s),
// B ~ G(k_c - k_s) drawn in that order:
//
//   effe = scale_e * (A + S),   cost = scale_c * (B + S)
//
// so effe ~ Gamma(k_e, scale_e), cost ~ Gamma(k_c, scale_c), both strictly
// positive and right-skewed, with within-patient correlation
// k_s / sqrt(k_e * k_c). Shapes and scales follow from the target mean and SD
// (k = (mean/sd)^2, scale = sd^2/mean). After drawing, each arm's effe and
// cost columns are multiplied by target_mean / sample_mean so the arm means
// equal the targets exactly; this keeps demo results stable across standard
// library implementations of std::gamma_distribution.
//
// Arm   n    effe mean  effe sd  cost mean  cost sd  k_s
// Std   99   3.653      1.60     76.497     33.0     2.0
// New   101  4.000      1.40     68.82      31.3     2.0
//
// Arm a in {Std=0, New=1} draws from stream_engine(seed, a).

struct DemoArmDesign {
  Arm arm;
  std::size_t n;
  double effe_mean, effe_sd;
  double cost_mean, cost_sd;
  double shared_shape;
};

inline constexpr DemoArmDesign kDemoStd{Arm::Std, 99, 3.653, 1.60,
                                        76.497, 33.0, 2.0};
inline constexpr DemoArmDesign kDemoNew{Arm::New, 101, 4.000, 1.40,
                                        68.82, 31.3, 2.0};

inline std::vector<PatientRecord> generate_arm(const DemoArmDesign& d,
                                               std::uint64_t seed) {
  auto engine = stream_engine(seed, static_cast<std::uint64_t>(d.arm));
  const double k_e = (d.effe_mean / d.effe_sd) * (d.effe_mean / d.effe_sd);
  const double k_c = (d.cost_mean / d.cost_sd) * (d.cost_mean / d.cost_sd);
  const double scale_e = d.effe_sd * d.effe_sd / d.effe_mean;
  const double scale_c = d.cost_sd * d.cost_sd / d.cost_mean;
  std::gamma_distribution<double> shared(d.shared_shape, 1.0);
  std::gamma_distribution<double> own_e(k_e - d.shared_shape, 1.0);
  std::gamma_distribution<double> own_c(k_c - d.shared_shape, 1.0);

  std::vector<PatientRecord> rows;
  rows.reserve(d.n);
  double sum_e = 0.0, sum_c = 0.0;
  for (std::size_t i = 0; i < d.n; ++i) {
    const double s = shared(engine);
    const double a = own_e(engine);
    const double b = own_c(engine);
    rows.push_back({d.arm, scale_e * (a + s), scale_c * (b + s)});
    sum_e += rows.back().effe;
    sum_c += rows.back().cost;
  }
  const double fix_e = d.effe_mean / (sum_e / static_cast<double>(d.n));
  const double fix_c = d.cost_mean / (sum_c / static_cast<double>(d.n));
  for (auto& r : rows) {
    r.effe *= fix_e;
    r.cost *= fix_c;
  }
  return rows;
}

/// 99 Std then 101 New patients; deterministic for a given seed.
inline std::vector<PatientRecord> generate_demo_data(std::uint64_t seed) {
  auto rows = generate_arm(kDemoStd, seed);
  auto more = generate_arm(kDemoNew, seed);
  rows.insert(rows.end(), more.begin(), more.end());
  return rows;
}

inline TwoArmData split_arms(std::span<const PatientRecord> records) {
  std::vector<PatientRecord> s, n;
  for (const auto& r : records) (r.arm == Arm::Std ? s : n).push_back(r);
  return TwoArmData{ArmSample(Arm::Std, std::move(s)),
                    ArmSample(Arm::New, std::move(n))};
}

}  // namespace iceinfer
