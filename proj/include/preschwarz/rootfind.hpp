#pragma once

#include <cmath>
#include <concepts>
#include <string>

#include "classes.hpp"
#include "errors.hpp"

namespace preschwarz {

/// A solved critical point together with how it was obtained.
struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 1.0;
};

inline constexpr double kDefaultBracketLo = 1e-9;
inline constexpr double kDefaultBracketHi = 1.0 - 1e-9;
inline constexpr double kExtendedBracketHi = 1.0 - 1e-12;
inline constexpr double kBracketWidth = 1e-14;

namespace detail {

inline void require_open_unit(double t, const char* where) {
  if (!(t > 0.0 && t < 1.0)) {
    throw DomainError(std::string(where) + ": argument " + std::to_string(t) + " is not in (0, 1)");
  }
}

inline void require_hyperbolic_s(double s, const char* where) {
  if (!(s > 0.0 && s < 1.0)) {
    throw DomainError(std::string(where) + ": s = " + std::to_string(s) +
                      " must satisfy 0 < s < 1 (s = 1 has a closed-form bound)");
  }
}

inline void require_limacon_s(double s, const char* where) {
  if (!(s > 0.0 && s <= max_parameter(Family::StarLimacon))) {
    throw DomainError(std::string(where) + ": s = " + std::to_string(s) +
                      " must satisfy 0 < s <= 1/sqrt(2)");
  }
}

// q(t) = ((1-t)^-s - 1)/t and its derivative. The power series
// sum_{n>=1} (s)_n/n! t^(n-1) is used below t = 0.1, where the closed form
// loses digits to cancellation.
struct QuotientJet {
  double value;
  double slope;
};

inline QuotientJet hyperbolic_quotient_jet(double s, double t) {
  if (t < 0.1) {
    double c = s;  // (s)_n / n! for n = 1
    double tp = 1.0;  // t^(n-1)
    double tq = 1.0;  // t^(n-2)
    double value = 0.0;
    double slope = 0.0;
    for (int n = 1; n <= 40; ++n) {
      value += c * tp;
      if (n >= 2) {
        slope += (n - 1) * c * tq;
        tq *= t;
      }
      tp *= t;
      c *= (s + n) / (n + 1.0);
    }
    return {value, slope};
  }
  const double e = std::expm1(-s * std::log1p(-t));
  const double de = s * std::pow(1.0 - t, -s - 1.0);
  return {e / t, (t * de - e) / (t * t)};
}

}  // namespace detail

/// Derivative of (1 - t^2) q(t): the convex-hyperbolic critical function.
/// Its unique zero in (0,1) maximizes the radial profile of the bound.
inline double crit_chyp(double s, double r) {
  detail::require_hyperbolic_s(s, "crit_chyp");
  detail::require_open_unit(r, "crit_chyp");
  const auto q = detail::hyperbolic_quotient_jet(s, r);
  return -2.0 * r * q.value + (1.0 - r) * (1.0 + r) * q.slope;
}

/// Starlike-hyperbolic critical function; equals s + crit_chyp(s, t).
inline double crit_shyp(double s, double t) {
  detail::require_hyperbolic_s(s, "crit_shyp");
  detail::require_open_unit(t, "crit_shyp");
  return s + crit_chyp(s, t);
}

/// Starlike-limacon critical function, a quartic over (1 - st)^2.
inline double crit_sl(double s, double t) {
  detail::require_limacon_s(s, "crit_sl");
  if (!(t >= 0.0 && t < 1.0)) {
    throw DomainError("crit_sl: argument " + std::to_string(t) + " is not in [0, 1)");
  }
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double s4 = s2 * s2;
  const double num = 3.0 * s2 + t * (-(2.0 * s3 + 8.0 * s) + t * ((s4 + 7.0 * s2) + t * (2.0 * s3 + t * (-3.0 * s4))));
  const double den = (1.0 - s * t) * (1.0 - s * t);
  return num / den;
}

/// Convex-limacon critical function s^2 (1 - 3r^2) - 4rs.
inline double crit_cl(double s, double r) {
  detail::require_limacon_s(s, "crit_cl");
  return s * s * (1.0 - 3.0 * r * r) - 4.0 * r * s;
}

/// Zero of crit_cl, (-2 + sqrt(3s^2 + 4)) / (3s), written without the
/// cancellation in the numerator.
inline double root_cl_closed(double s) {
  detail::require_limacon_s(s, "root_cl_closed");
  return s / (2.0 + std::sqrt(3.0 * s * s + 4.0));
}

/// Bisection for a function with fn(lo) > 0 > fn(hi), e.g. a derivative that
/// decreases through its unique zero. Deterministic.
template <typename F>
  requires std::invocable<F&, double>
RootResult solve_bracketed(F&& fn, double lo, double hi, double width = kBracketWidth) {
  if (!(lo < hi)) {
    throw BracketError("solve_bracketed: empty bracket [" + std::to_string(lo) + ", " + std::to_string(hi) + "]",
                       lo, hi, NAN, NAN);
  }
  const double f_lo = fn(lo);
  const double f_hi = fn(hi);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    throw BracketError("solve_bracketed: no sign change, f(" + std::to_string(lo) + ") = " + std::to_string(f_lo) +
                           ", f(" + std::to_string(hi) + ") = " + std::to_string(f_hi),
                       lo, hi, f_lo, f_hi);
  }
  int iterations = 0;
  while (hi - lo > width) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) {
      break;
    }
    ++iterations;
    const double fm = fn(mid);
    if (fm > 0.0) {
      lo = mid;
    } else if (fm < 0.0) {
      hi = mid;
    } else {
      return {mid, fm, iterations, lo, hi};
    }
  }
  const double root = lo + 0.5 * (hi - lo);
  return {root, fn(root), iterations, lo, hi};
}

/// Critical function of a class, as used by the curve sampler and the solver.
inline double critical_value(const ClassSpec& spec, double t) {
  switch (spec.family()) {
    case Family::StarHyp: return crit_shyp(spec.s(), t);
    case Family::StarLimacon: return crit_sl(spec.s(), t);
    case Family::ConvHyp: return crit_chyp(spec.s(), t);
    case Family::ConvLimacon: return crit_cl(spec.s(), t);
  }
  throw DomainError("critical_value: unknown family");
}

/// Solves the critical-point equation of a class. The convex-limacon root is
/// closed form (iterations = 0); s = 1 in the hyperbolic families is refused.
inline RootResult solve_critical(const ClassSpec& spec) {
  const double s = spec.s();
  if (spec.family() == Family::ConvLimacon) {
    const double r0 = root_cl_closed(s);
    return {r0, crit_cl(s, r0), 0, 0.0, 1.0};
  }
  if (is_hyperbolic(spec.family()) && s == 1.0) {
    throw DomainError("no critical equation for class " + std::string(family_name(spec.family())) +
                      " at s = 1; the bound is the closed-form constant");
  }
  const auto fn = [&spec](double t) { return critical_value(spec, t); };
  double hi = kDefaultBracketHi;
  if (is_hyperbolic(spec.family()) && fn(hi) > 0.0) {
    hi = kExtendedBracketHi;
  }
  return solve_bracketed(fn, kDefaultBracketLo, hi);
}

}  // namespace preschwarz
