#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "classes.hpp"
#include "rootfind.hpp"

namespace preschwarz {

struct CurvePoint {
  double x;
  double y;
};

/// A labelled polyline ready for plotting.
struct CurveSamples {
  std::string label;
  std::vector<CurvePoint> points;
};

/// Points with r = 1/(2cos(theta/s))^s beyond this radius are dropped.
inline constexpr double kHyperbolaClipRadius = 1e3;

/// Right branch of the hyperbola bounding the image of (1-z)^-s, sampled at n
/// angles uniform on (-pi s/2 + eps, pi s/2 - eps), eps = pi s / (20 n).
inline CurveSamples hyperbola_boundary(double s, int n) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw DomainError("hyperbola_boundary: s = " + std::to_string(s) + " must satisfy 0 < s <= 1");
  }
  if (n < 2) {
    throw DomainError("hyperbola_boundary: need n >= 2 samples");
  }
  const double half = std::numbers::pi * s / 2.0;
  const double a = half - half / (10.0 * n);
  CurveSamples out{"hyperbola boundary s=" + std::to_string(s), {}};
  out.points.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    // Written as a multiple of (2k - (n-1)) so the angle set is exactly symmetric.
    const double theta = a * (2.0 * k - (n - 1)) / (n - 1);
    const double r = std::pow(2.0 * std::cos(theta / s), -s);
    if (r > kHyperbolaClipRadius) {
      continue;
    }
    out.points.push_back({r * std::cos(theta), r * std::sin(theta)});
  }
  return out;
}

/// Limacon bounding the image of (1+sz)^2, traced as (1 + s e^{it})^2 for
/// t = 2 pi k / n.
inline CurveSamples limacon_boundary(double s, int n) {
  if (!(s > 0.0 && s <= max_parameter(Family::StarLimacon))) {
    throw DomainError("limacon_boundary: s = " + std::to_string(s) + " must satisfy 0 < s <= 1/sqrt(2)");
  }
  if (n < 2) {
    throw DomainError("limacon_boundary: need n >= 2 samples");
  }
  CurveSamples out{"limacon boundary s=" + std::to_string(s), {}};
  out.points.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * k / n;
    const Complex u = 1.0 + s * Complex{std::cos(t), std::sin(t)};
    const Complex w = u * u;
    out.points.push_back({w.real(), w.imag()});
  }
  return out;
}

/// Implicit limacon equation ((u-1)^2 + v^2 - s^4)^2 - 4s^2((u-1+s^2)^2 + v^2).
inline double limacon_residual(double s, double u, double v) {
  const double s2 = s * s;
  const double a = (u - 1.0) * (u - 1.0) + v * v - s2 * s2;
  const double b = (u - 1.0 + s2) * (u - 1.0 + s2) + v * v;
  return a * a - 4.0 * s2 * b;
}

inline CurveSamples class_boundary(const ClassSpec& spec, int n) {
  return is_hyperbolic(spec.family()) ? hyperbola_boundary(spec.s(), n) : limacon_boundary(spec.s(), n);
}

/// Samples (t, critical_value(spec, t)) at n points uniform on [1e-6, 1 - 1e-6].
inline CurveSamples critical_curve(const ClassSpec& spec, int n) {
  if (n < 2) {
    throw DomainError("critical_curve: need n >= 2 samples");
  }
  if (is_hyperbolic(spec.family()) && spec.s() == 1.0) {
    throw DomainError("critical_curve: s = 1 has no critical function for class " +
                      std::string(family_name(spec.family())));
  }
  constexpr double lo = 1e-6;
  constexpr double hi = 1.0 - 1e-6;
  CurveSamples out{"critical " + std::string(family_name(spec.family())) + " s=" + std::to_string(spec.s()), {}};
  out.points.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = lo + (hi - lo) * k / (n - 1);
    out.points.push_back({t, critical_value(spec, t)});
  }
  return out;
}

/// CSV with the given header, one point per row, 17 significant digits.
inline void write_csv(std::ostream& os, const CurveSamples& curve, std::string_view header) {
  os << header << '\n';
  for (const auto& p : curve.points) {
    os << fmt::format("{:.17g},{:.17g}\n", p.x, p.y);
  }
}

/// Single-polyline SVG; the viewBox is the bounding box plus a 5% margin,
/// with y flipped so the curve appears in mathematical orientation.
inline void write_svg(std::ostream& os, const CurveSamples& curve) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const auto& p : curve.points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  if (curve.points.empty()) {
    xmin = ymin = 0.0;
    xmax = ymax = 1.0;
  }
  const double pad = 0.05 * std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double width = xmax - xmin + 2.0 * pad;
  const double height = ymax - ymin + 2.0 * pad;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.17g} {:.17g} {:.17g} {:.17g}\">\n",
                    xmin - pad, -(ymax + pad), width, height);
  os << "  <title>" << curve.label << "</title>\n";
  os << fmt::format("  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"{:.6g}\" points=\"",
                    0.004 * std::max(width, height));
  bool first = true;
  for (const auto& p : curve.points) {
    os << (first ? "" : " ") << fmt::format("{:.17g},{:.17g}", p.x, -p.y);
    first = false;
  }
  os << "\"/>\n</svg>\n";
}

}  // namespace preschwarz
