#pragma once

#include <cmath>
#include <optional>

#include "classes.hpp"
#include "rootfind.hpp"

namespace preschwarz {

/// Upper bound of the pre-Schwarzian norm over a class, with the critical
/// point it came from. `root` is empty for the s = 1 hyperbolic constants.
struct NormBound {
  ClassSpec spec;
  std::optional<RootResult> root;
  double bound;
};

/// Bound for the starlike-hyperbolic class; exactly 4 at s = 1.
inline NormBound bound_shyp(double s) {
  const ClassSpec spec(Family::StarHyp, s);
  if (s == 1.0) {
    return {spec, std::nullopt, 4.0};
  }
  const RootResult r = solve_critical(spec);
  const double t = r.root;
  const double value = (s * t * (1.0 + t) + (1.0 + t) * std::pow(1.0 - t, 1.0 - s) - (1.0 - t * t)) / t;
  return {spec, r, value};
}

inline NormBound bound_sl(double s) {
  const ClassSpec spec(Family::StarLimacon, s);
  const RootResult r = solve_critical(spec);
  const double t = r.root;
  const double u = 1.0 + s * t;
  const double value = 2.0 * s * (1.0 - t * t) / (1.0 - s * t) + (1.0 - t * t) * (u * u - 1.0) / t;
  return {spec, r, value};
}

/// Bound for the convex-hyperbolic class; exactly 2 at s = 1.
inline NormBound bound_chyp(double s) {
  const ClassSpec spec(Family::ConvHyp, s);
  if (s == 1.0) {
    return {spec, std::nullopt, 2.0};
  }
  const RootResult r = solve_critical(spec);
  const double t = r.root;
  const double value = ((1.0 + t) * std::pow(1.0 - t, 1.0 - s) - (1.0 - t * t)) / t;
  return {spec, r, value};
}

/// Closed form 2(q + 4)(3s^2 + 2q - 4) / (27 s), q = sqrt(3s^2 + 4).
inline NormBound bound_cl(double s) {
  const ClassSpec spec(Family::ConvLimacon, s);
  const double q = std::sqrt(3.0 * s * s + 4.0);
  const double value = 2.0 * (q + 4.0) * (3.0 * s * s + 2.0 * q - 4.0) / (27.0 * s);
  return {spec, solve_critical(spec), value};
}

inline NormBound norm_bound(const ClassSpec& spec) {
  switch (spec.family()) {
    case Family::StarHyp: return bound_shyp(spec.s());
    case Family::StarLimacon: return bound_sl(spec.s());
    case Family::ConvHyp: return bound_chyp(spec.s());
    case Family::ConvLimacon: return bound_cl(spec.s());
  }
  throw DomainError("norm_bound: unknown family");
}

/// The one-variable function whose maximum over (0,1) is the bound:
///   shyp  s(1+t) + (1-t^2) q(t)
///   sl    2s(1-t^2)/(1-st) + (1-t^2)(2s + s^2 t)
///   chyp  (1-t^2) q(t)
///   cl    (1-t^2)(2s + s^2 t)
/// with q(t) = ((1-t)^-s - 1)/t.
inline double bound_profile(const ClassSpec& spec, double t) {
  const double s = spec.s();
  const double w = (1.0 - t) * (1.0 + t);
  switch (spec.family()) {
    case Family::StarHyp:
      return s * (1.0 + t) + w * detail::hyperbolic_quotient_jet(s, t).value;
    case Family::StarLimacon:
      return 2.0 * s * w / (1.0 - s * t) + w * (2.0 * s + s * s * t);
    case Family::ConvHyp:
      return w * detail::hyperbolic_quotient_jet(s, t).value;
    case Family::ConvLimacon:
      return w * (2.0 * s + s * s * t);
  }
  throw DomainError("bound_profile: unknown family");
}

}  // namespace preschwarz
