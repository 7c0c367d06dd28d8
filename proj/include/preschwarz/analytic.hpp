#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace preschwarz {

using Complex = std::complex<double>;

inline bool is_finite(Complex w) noexcept {
  return std::isfinite(w.real()) && std::isfinite(w.imag());
}

inline void require_finite(Complex w, const char* where) {
  if (!is_finite(w)) {
    throw DomainError(std::string(where) + ": non-finite complex argument");
  }
}

/// Principal argument in (-pi, pi]. std::arg yields -pi for a negative real
/// with a negative zero imaginary part; that case is folded onto +pi.
inline double principal_arg(Complex w) noexcept {
  const double a = std::arg(w);
  return a == -std::numbers::pi ? std::numbers::pi : a;
}

/// log|w| + i arg(w) with arg in (-pi, pi], so that log(1) = 0.
inline Complex principal_log(Complex w) {
  require_finite(w, "principal_log");
  if (w == Complex{0.0, 0.0}) {
    throw DomainError("principal_log: logarithm of zero");
  }
  return {std::log(std::abs(w)), principal_arg(w)};
}

/// w^p = exp(p log w) on the principal branch.
inline Complex principal_pow(Complex w, double p) {
  require_finite(w, "principal_pow");
  if (!std::isfinite(p)) {
    throw DomainError("principal_pow: non-finite exponent");
  }
  if (w == Complex{0.0, 0.0}) {
    throw DomainError("principal_pow: zero base");
  }
  return std::exp(p * principal_log(w));
}

/// Truncated power series sum_n coeffs[n] z^n, trusted for |z| < radius_hint.
struct PowerSeries {
  std::vector<Complex> coeffs;
  double radius_hint = 1.0;

  PowerSeries() : coeffs{Complex{0.0, 0.0}} {}

  PowerSeries(std::vector<Complex> c, double radius) : coeffs(std::move(c)), radius_hint(radius) {
    if (coeffs.empty()) {
      throw DomainError("PowerSeries: coefficient list is empty");
    }
    if (!(radius_hint > 0.0 && radius_hint <= 1.0)) {
      throw DomainError("PowerSeries: radius_hint must lie in (0, 1]");
    }
    for (const auto& a : coeffs) {
      require_finite(a, "PowerSeries");
    }
  }

  std::size_t size() const noexcept { return coeffs.size(); }

  /// coeffs[0] = 0 and coeffs[1] = 1, i.e. f(z) = z + a2 z^2 + ...
  bool is_normalized() const noexcept {
    return coeffs.size() >= 2 && coeffs[0] == Complex{0.0, 0.0} && coeffs[1] == Complex{1.0, 0.0};
  }
};

/// Horner evaluation without the radius check; for internal use once the
/// caller has validated z.
inline Complex horner(std::span<const Complex> coeffs, Complex z) noexcept {
  Complex acc{0.0, 0.0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

inline Complex eval_series(const PowerSeries& f, Complex z) {
  require_finite(z, "eval_series");
  if (!(std::abs(z) < f.radius_hint)) {
    throw DomainError("eval_series: |z| = " + std::to_string(std::abs(z)) +
                      " is not below radius_hint = " + std::to_string(f.radius_hint));
  }
  return horner(f.coeffs, z);
}

/// Term-by-term derivative. A constant series differentiates to [0].
inline PowerSeries series_derivative(const PowerSeries& f) {
  if (f.size() == 1) {
    return PowerSeries({Complex{0.0, 0.0}}, f.radius_hint);
  }
  std::vector<Complex> d(f.size() - 1);
  for (std::size_t n = 1; n < f.size(); ++n) {
    d[n - 1] = static_cast<double>(n) * f.coeffs[n];
  }
  return PowerSeries(std::move(d), f.radius_hint);
}

/// Default truncation length used when building comparison series.
inline constexpr std::size_t kDefaultSeriesTerms = 64;

}  // namespace preschwarz
