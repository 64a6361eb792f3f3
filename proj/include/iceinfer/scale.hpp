#pragma once

// Shadow price of health (lambda) and the two unit perspectives of the ICE
// plane. Alias expresses outcomes in effectiveness units (cost / lambda),
// Alibi in cost units (lambda * effectiveness).

#include <cmath>
#include <string_view>

#include <fmt/format.h>

#include "iceinfer/data_model.hpp"
#include "iceinfer/error.hpp"

namespace iceinfer {

enum class LambdaSource { UserSupplied, StatisticalRatio, NearestPowerOf10 };

constexpr std::string_view to_string(LambdaSource s) noexcept {
  switch (s) {
    case LambdaSource::UserSupplied: return "user-supplied";
    case LambdaSource::StatisticalRatio: return "statistical ratio";
    case LambdaSource::NearestPowerOf10: return "nearest power of 10";
  }
  return "unknown";
}

/// Cost units per effectiveness unit; strictly positive and finite.
class ShadowPrice {
 public:
  explicit ShadowPrice(double lambda,
                       LambdaSource source = LambdaSource::UserSupplied)
      : value_(lambda), source_(source) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("shadow price must be positive and finite, got {}",
                              lambda));
  }

  double value() const noexcept { return value_; }
  LambdaSource source() const noexcept { return source_; }

  friend bool operator==(const ShadowPrice& a, const ShadowPrice& b) noexcept {
    return a.value_ == b.value_;
  }

 private:
  double value_;
  LambdaSource source_;
};

enum class Perspective { Alias, Alibi };

constexpr std::string_view to_string(Perspective p) noexcept {
  return p == Perspective::Alias ? "alias" : "alibi";
}

/// One point of the ICE plane in a single standardized unit system.
struct IceOutcome {
  double x = 0.0;
  double y = 0.0;
  ShadowPrice lambda{1.0};
  Perspective perspective = Perspective::Alias;

  double delta_e() const noexcept {
    return perspective == Perspective::Alias ? x : x / lambda.value();
  }
  double delta_c() const noexcept {
    return perspective == Perspective::Alias ? y * lambda.value() : y;
  }
};

inline IceOutcome standardize(double delta_e, double delta_c,
                              ShadowPrice lambda, Perspective perspective) {
  const double l = lambda.value();
  if (perspective == Perspective::Alias)
    return {delta_e, delta_c / l, lambda, perspective};
  return {l * delta_e, delta_c, lambda, perspective};
}

/// Re-expresses an outcome in the other perspective (alias y*lambda = alibi y).
inline IceOutcome convert(const IceOutcome& o, Perspective to) {
  if (o.perspective == to) return o;
  const double l = o.lambda.value();
  if (to == Perspective::Alibi) return {o.x * l, o.y * l, o.lambda, to};
  return {o.x / l, o.y / l, o.lambda, to};
}

// ---------------------------------------------------------------------------

enum class ScaleRule {
  StandardError,  ///< SE of the between-arm mean difference
  Pooled,         ///< pooled within-arm SD
};

constexpr std::string_view to_string(ScaleRule r) noexcept {
  return r == ScaleRule::StandardError ? "se" : "pooled";
}

/// 10^round(log10(ratio)); half-decade ties round up.
inline ShadowPrice nearest_power_of_10(double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio))
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("ratio must be positive and finite, got {}", ratio));
  const double exponent = std::floor(std::log10(ratio) + 0.5);
  return ShadowPrice(std::pow(10.0, exponent), LambdaSource::NearestPowerOf10);
}

struct ScaleResult {
  double spread_effe = 0.0;
  double spread_cost = 0.0;
  double ratio = 0.0;
  ScaleRule rule = ScaleRule::StandardError;
  ShadowPrice recommended{1.0};
};

/// Spread of the between-arm difference in one variable under `rule`.
inline double difference_spread(const ArmSample& std_arm,
                                const ArmSample& new_arm, Variable v,
                                ScaleRule rule) {
  const auto a = std_arm.values(v);
  const auto b = new_arm.values(v);
  const double sa = sample_sd(a), sb = sample_sd(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  if (rule == ScaleRule::StandardError)
    return std::sqrt(sa * sa / na + sb * sb / nb);
  return std::sqrt(((na - 1) * sa * sa + (nb - 1) * sb * sb) / (na + nb - 2));
}

/// Statistical cost-per-effectiveness ratio and its nearest power of 10.
inline ScaleResult ice_scale(const ArmSample& std_arm, const ArmSample& new_arm,
                             ScaleRule rule = ScaleRule::StandardError) {
  ScaleResult r;
  r.rule = rule;
  r.spread_effe = difference_spread(std_arm, new_arm, Variable::Effe, rule);
  r.spread_cost = difference_spread(std_arm, new_arm, Variable::Cost, rule);
  if (!(r.spread_effe > 0.0))
    throw Error(ErrorCode::ZeroEffeVariance,
                "effectiveness shows no variability in either arm");
  r.ratio = r.spread_cost / r.spread_effe;
  if (!(r.ratio > 0.0))
    throw Error(ErrorCode::InvalidArgument,
                "cost shows no variability; ratio is zero");
  r.recommended = nearest_power_of_10(r.ratio);
  return r;
}

}  // namespace iceinfer
