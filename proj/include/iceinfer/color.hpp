#pragma once

// Sign-banded color ramps for preference values. Positive preferences run
// yellow -> green, negative tan -> red, zero is a neutral grey. Each ramp is
// linear in CIELAB (D65) between its two sRGB endpoints:
//
//   positive  #FFEB3B (t -> 0)  ..  #1B7837 (t = 1)
//   negative  #D2B48C (t -> 0)  ..  #B2182B (t = 1)
//   zero      #EEEEEE
//
// with t = min(|v| / scale, 1) and `scale` the largest |v| on the plot.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <fmt/format.h>

namespace iceinfer {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;

  std::string hex() const { return fmt::format("#{:02X}{:02X}{:02X}", r, g, b); }
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

namespace detail {

struct Lab {
  double l, a, b;
};

inline double srgb_to_linear(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}
inline double linear_to_srgb(double c) {
  return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

inline constexpr double kWhiteX = 0.95047, kWhiteY = 1.0, kWhiteZ = 1.08883;

inline double lab_f(double t) {
  constexpr double d = 6.0 / 29.0;
  return t > d * d * d ? std::cbrt(t) : t / (3 * d * d) + 4.0 / 29.0;
}
inline double lab_f_inv(double t) {
  constexpr double d = 6.0 / 29.0;
  return t > d ? t * t * t : 3 * d * d * (t - 4.0 / 29.0);
}

inline Lab to_lab(Rgb c) {
  const double r = srgb_to_linear(c.r / 255.0);
  const double g = srgb_to_linear(c.g / 255.0);
  const double b = srgb_to_linear(c.b / 255.0);
  const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
  const double fx = lab_f(x / kWhiteX), fy = lab_f(y / kWhiteY),
               fz = lab_f(z / kWhiteZ);
  return {116 * fy - 16, 500 * (fx - fy), 200 * (fy - fz)};
}

inline Rgb from_lab(Lab c) {
  const double fy = (c.l + 16) / 116;
  const double fx = fy + c.a / 500;
  const double fz = fy - c.b / 200;
  const double x = kWhiteX * lab_f_inv(fx);
  const double y = kWhiteY * lab_f_inv(fy);
  const double z = kWhiteZ * lab_f_inv(fz);
  const double lin[3] = {3.2404542 * x - 1.5371385 * y - 0.4985314 * z,
                         -0.9692660 * x + 1.8760108 * y + 0.0415560 * z,
                         0.0556434 * x - 0.2040259 * y + 1.0572252 * z};
  std::array<std::uint8_t, 3> out{};
  for (int k = 0; k < 3; ++k) {
    const double s = std::clamp(linear_to_srgb(lin[k]), 0.0, 1.0);
    out[k] = static_cast<std::uint8_t>(std::lround(s * 255.0));
  }
  return {out[0], out[1], out[2]};
}

inline Rgb lerp_lab(Rgb from, Rgb to, double t) {
  const Lab a = to_lab(from), b = to_lab(to);
  return from_lab({a.l + t * (b.l - a.l), a.a + t * (b.a - a.a),
                   a.b + t * (b.b - a.b)});
}

}  // namespace detail

enum class ColorBand { Negative, Zero, Positive };

class ColorScale {
 public:
  static constexpr Rgb kPositiveLow{0xFF, 0xEB, 0x3B};
  static constexpr Rgb kPositiveHigh{0x1B, 0x78, 0x37};
  static constexpr Rgb kNegativeLow{0xD2, 0xB4, 0x8C};
  static constexpr Rgb kNegativeHigh{0xB2, 0x18, 0x2B};
  static constexpr Rgb kZero{0xEE, 0xEE, 0xEE};

  /// Values with |v| below this fraction of the scale are "near zero".
  static constexpr double kNearZeroFraction = 0.1;

  explicit ColorScale(double scale) : scale_(scale > 0 ? scale : 1.0) {}

  double scale() const noexcept { return scale_; }

  static ColorBand band(double v) noexcept {
    if (v > 0) return ColorBand::Positive;
    if (v < 0) return ColorBand::Negative;
    return ColorBand::Zero;
  }

  double intensity(double v) const noexcept {
    return std::min(std::abs(v) / scale_, 1.0);
  }

  bool near_zero(double v) const noexcept {
    return intensity(v) < kNearZeroFraction;
  }

  Rgb operator()(double v) const {
    switch (band(v)) {
      case ColorBand::Positive:
        return detail::lerp_lab(kPositiveLow, kPositiveHigh, intensity(v));
      case ColorBand::Negative:
        return detail::lerp_lab(kNegativeLow, kNegativeHigh, intensity(v));
      case ColorBand::Zero: break;
    }
    return kZero;
  }

 private:
  double scale_;
};

constexpr std::string_view to_string(ColorBand b) noexcept {
  switch (b) {
    case ColorBand::Negative: return "neg";
    case ColorBand::Zero: return "zero";
    case ColorBand::Positive: return "pos";
  }
  return "zero";
}

}  // namespace iceinfer
