#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "analytic.hpp"

namespace preschwarz {

/// The four Ma-Minda classes handled here: starlike/convex over the
/// hyperbola-bounded image of (1-z)^-s and the limacon-bounded image of (1+sz)^2.
enum class Family { StarHyp, StarLimacon, ConvHyp, ConvLimacon };

inline bool is_hyperbolic(Family f) noexcept { return f == Family::StarHyp || f == Family::ConvHyp; }
inline bool is_starlike(Family f) noexcept { return f == Family::StarHyp || f == Family::StarLimacon; }

/// Short name used on the command line: shyp, sl, chyp, cl.
inline std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::StarHyp: return "shyp";
    case Family::StarLimacon: return "sl";
    case Family::ConvHyp: return "chyp";
    case Family::ConvLimacon: return "cl";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view name) noexcept {
  if (name == "shyp") return Family::StarHyp;
  if (name == "sl") return Family::StarLimacon;
  if (name == "chyp") return Family::ConvHyp;
  if (name == "cl") return Family::ConvLimacon;
  return std::nullopt;
}

/// Upper end of the admissible parameter range: 1 for the hyperbolic
/// families, 1/sqrt(2) for the limacon families.
inline double max_parameter(Family f) noexcept {
  return is_hyperbolic(f) ? 1.0 : std::numbers::sqrt2 / 2.0;
}

/// A class together with its parameter s. Construction validates the range.
class ClassSpec {
public:
  ClassSpec(Family family, double s) : family_(family), s_(s) {
    const double smax = max_parameter(family);
    if (!(std::isfinite(s) && s > 0.0 && s <= smax)) {
      throw DomainError("s = " + std::to_string(s) + " is out of range for class " +
                        std::string(family_name(family)) + "; valid range is 0 < s <= " +
                        (is_hyperbolic(family) ? std::string("1") : std::string("1/sqrt(2) = 0.70710678")));
    }
  }

  Family family() const noexcept { return family_; }
  double s() const noexcept { return s_; }

private:
  Family family_;
  double s_;
};

/// The subordinating function: (1-z)^-s or (1+sz)^2.
inline Complex phi(const ClassSpec& spec, Complex z) {
  require_finite(z, "phi");
  const double s = spec.s();
  if (is_hyperbolic(spec.family())) {
    return principal_pow(Complex{1.0, 0.0} - z, -s);
  }
  const Complex u = 1.0 + s * z;
  return u * u;
}

/// Open-image membership w in phi(D), decided by inverting phi.
///
/// For the hyperbolic families the image is the sector |arg w| < pi s/2 cut by
/// the hyperbola branch; the sector test keeps the principal inverse power from
/// wrapping distant points back into the disk.
inline bool in_image(const ClassSpec& spec, Complex w) {
  require_finite(w, "in_image");
  if (w == Complex{0.0, 0.0}) {
    return false;
  }
  const double s = spec.s();
  if (is_hyperbolic(spec.family())) {
    if (!(std::abs(principal_arg(w)) < std::numbers::pi * s / 2.0)) {
      return false;
    }
    return std::abs(1.0 - principal_pow(w, -1.0 / s)) < 1.0;
  }
  return std::abs(std::sqrt(w) - 1.0) < s;
}

/// P(z) = f''(z)/f'(z) as a callable, with a label for reports.
struct PreSchwarzianField {
  std::function<Complex(Complex)> evaluate;
  std::string label;

  Complex operator()(Complex z) const { return evaluate(z); }
};

namespace detail {

inline constexpr double kTaylorSwitchRadius = 1e-4;

// ((1-z)^-s - 1)/z; below the switch radius the quadratic Taylor polynomial
// s + s(s+1)/2 z + s(s+1)(s+2)/6 z^2 replaces the cancelling quotient.
inline Complex hyperbolic_quotient(double s, Complex z) {
  if (std::abs(z) < kTaylorSwitchRadius) {
    const double c1 = s;
    const double c2 = s * (s + 1.0) / 2.0;
    const double c3 = s * (s + 1.0) * (s + 2.0) / 6.0;
    return c1 + z * (c2 + z * c3);
  }
  return (principal_pow(Complex{1.0, 0.0} - z, -s) - 1.0) / z;
}

}  // namespace detail

/// Closed-form pre-Schwarzian of the extremal function obtained with the
/// identity Schwarz function in the class representation.
inline PreSchwarzianField extremal_preschwarzian(const ClassSpec& spec) {
  const double s = spec.s();
  const std::string label = "extremal " + std::string(family_name(spec.family())) + " s=" + std::to_string(s);
  switch (spec.family()) {
    case Family::StarHyp:
      return {[s](Complex z) { return s / (1.0 - z) + detail::hyperbolic_quotient(s, z); }, label};
    case Family::StarLimacon:
      // ((1+sz)^2 - 1)/z = 2s + s^2 z exactly, so no switch-over is needed.
      return {[s](Complex z) { return 2.0 * s / (1.0 + s * z) + 2.0 * s + s * s * z; }, label};
    case Family::ConvHyp:
      return {[s](Complex z) { return detail::hyperbolic_quotient(s, z); }, label};
    case Family::ConvLimacon:
      return {[s](Complex z) { return 2.0 * s + s * s * z; }, label};
  }
  throw DomainError("extremal_preschwarzian: unknown family");
}

/// Threshold below which |f'(z)| is treated as a critical point.
inline constexpr double kLocalUnivalenceFloor = 1e-13;

/// Derivatives of an ingested normalized series, shared by the evaluators.
class SeriesJet {
public:
  explicit SeriesJet(PowerSeries f)
      : f_(std::move(f)), d1_(series_derivative(f_)), d2_(series_derivative(d1_)) {
    if (!f_.is_normalized()) {
      throw DomainError("series must be normalized: coeffs[0] = 0 and coeffs[1] = 1");
    }
    // f(z)/z, the shifted series, is nonvanishing near 0 and avoids 0/0 in zf'/f.
    quotient_ = PowerSeries(std::vector<Complex>(f_.coeffs.begin() + 1, f_.coeffs.end()), f_.radius_hint);
  }

  const PowerSeries& series() const noexcept { return f_; }
  double radius() const noexcept { return f_.radius_hint; }

  Complex value(Complex z) const { return eval_series(f_, z); }
  Complex first(Complex z) const { return eval_series(d1_, z); }
  Complex second(Complex z) const { return eval_series(d2_, z); }

  /// f''/f'; throws EvaluationError where f' (numerically) vanishes.
  Complex preschwarzian(Complex z) const {
    const Complex d1 = first(z);
    if (std::abs(d1) < kLocalUnivalenceFloor) {
      throw EvaluationError("f'(z) vanishes at z = (" + std::to_string(z.real()) + ", " +
                            std::to_string(z.imag()) + "): not locally univalent");
    }
    return second(z) / d1;
  }

  /// z f'(z) / f(z), computed as f'(z) / (f(z)/z).
  Complex starlike_ratio(Complex z) const {
    const Complex q = eval_series(quotient_, z);
    if (std::abs(q) < kLocalUnivalenceFloor) {
      throw EvaluationError("f(z)/z vanishes at z = (" + std::to_string(z.real()) + ", " +
                            std::to_string(z.imag()) + ")");
    }
    return first(z) / q;
  }

  /// 1 + z f''(z) / f'(z).
  Complex convex_ratio(Complex z) const { return 1.0 + z * preschwarzian(z); }

private:
  PowerSeries f_;
  PowerSeries d1_;
  PowerSeries d2_;
  PowerSeries quotient_;
};

/// f''/f' of a normalized truncated series.
inline PreSchwarzianField preschwarzian_of_series(const PowerSeries& f) {
  auto jet = std::make_shared<const SeriesJet>(f);
  return {[jet](Complex z) { return jet->preschwarzian(z); },
          "series (" + std::to_string(f.size()) + " terms)"};
}

}  // namespace preschwarz
