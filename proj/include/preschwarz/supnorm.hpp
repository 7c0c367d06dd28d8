#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "classes.hpp"
#include "errors.hpp"

namespace preschwarz {

inline constexpr double kDefaultRMax = 1.0 - 1e-8;
inline constexpr double kMaxRMax = 1.0 - 1e-9;

/// Polar search grid over the disk |z| <= r_max.
struct GridSpec {
  int n_radial = 512;
  int n_angular = 1024;
  double r_max = kDefaultRMax;
  /// Restrict angles to [0, pi]; valid for fields with P(conj z) = conj P(z).
  bool upper_half_only = false;

  void validate() const {
    if (n_radial < 16 || n_angular < 16) {
      throw DomainError("GridSpec: need at least 16 radial and 16 angular nodes, got " +
                        std::to_string(n_radial) + "x" + std::to_string(n_angular));
    }
    if (!(r_max > 0.0 && r_max <= kMaxRMax)) {
      throw DomainError("GridSpec: r_max = " + std::to_string(r_max) + " must lie in (0, 1 - 1e-9]");
    }
  }
};

/// Located maximum of a disk functional. `refined` is set when the local
/// search improved on the best grid node.
struct SupResult {
  double value = 0.0;
  double arg_r = 0.0;
  double arg_theta = 0.0;
  bool refined = false;
};

/// Worker count from PRESCHWARZ_THREADS; unset or 0 means hardware concurrency.
inline unsigned default_thread_count() {
  unsigned n = 0;
  if (const char* env = std::getenv("PRESCHWARZ_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) {
      n = static_cast<unsigned>(v);
    }
  }
  if (n == 0) {
    n = std::max(1u, std::thread::hardware_concurrency());
  }
  return n;
}

/// Golden-section search for a maximum on [a, b], stopping at width `tol`.
/// Both endpoints are also compared so boundary maxima are not missed.
/// Returns (argmax, value).
template <typename F>
std::pair<double, double> golden_section_maximize(F&& f, double a, double b, double tol = 1e-10) {
  constexpr double inv_phi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    if (!(c < d)) {
      break;
    }
  }
  std::pair<double, double> best = fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
  for (double x : {a, b}) {
    const double fx = f(x);
    if (fx > best.second) {
      best = {x, fx};
    }
  }
  return best;
}

namespace detail {

inline double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  while (theta <= -std::numbers::pi) theta += two_pi;
  while (theta > std::numbers::pi) theta -= two_pi;
  return theta;
}

struct Candidate {
  double value = -1.0;
  double r = 0.0;
  double theta = 0.0;
  int i = 0;
  int j = 0;
};

// Larger value wins; ties go to the smaller r, then the smaller theta.
inline bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.r != b.r) return a.r < b.r;
  return a.theta < b.theta;
}

// (1 - r^2) |P(r e^{i theta})| r^power, with evaluator failures re-thrown
// with the grid location attached.
template <typename P>
double weighted_modulus(const P& field, double r, double theta, int power) {
  Complex value;
  try {
    value = field(std::polar(r, theta));
  } catch (const std::exception& e) {
    throw EvaluationError("evaluation failed at r = " + std::to_string(r) + ", theta = " + std::to_string(theta) +
                          ": " + e.what());
  }
  if (!is_finite(value)) {
    throw EvaluationError("non-finite field value at r = " + std::to_string(r) +
                          ", theta = " + std::to_string(theta));
  }
  double w = (1.0 - r) * (1.0 + r) * std::abs(value);
  if (power == 1) w *= r;
  return w;
}

inline double radial_node(const GridSpec& grid, int i) {
  const double u = 1.0 - static_cast<double>(i) / grid.n_radial;
  return grid.r_max * (1.0 - u * u);
}

inline double angular_node(const GridSpec& grid, int j) {
  return -std::numbers::pi + 2.0 * std::numbers::pi * (j + 1) / grid.n_angular;
}

template <typename P>
SupResult grid_supremum(const P& field, const GridSpec& grid, int power, unsigned threads) {
  grid.validate();
  const int j_begin = grid.upper_half_only ? grid.n_angular / 2 - 1 : 0;
  const int j_end = grid.n_angular;
  const int columns = j_end - j_begin;
  const unsigned workers = std::clamp<unsigned>(threads == 0 ? 1u : threads, 1u, static_cast<unsigned>(columns));

  std::vector<Candidate> chunk_best(workers);
  std::vector<std::exception_ptr> chunk_error(workers);
  auto work = [&](unsigned w) {
    const int lo = j_begin + static_cast<int>(static_cast<long>(columns) * w / workers);
    const int hi = j_begin + static_cast<int>(static_cast<long>(columns) * (w + 1) / workers);
    Candidate best;
    try {
      for (int j = lo; j < hi; ++j) {
        const double theta = angular_node(grid, j);
        for (int i = 0; i <= grid.n_radial; ++i) {
          const double r = radial_node(grid, i);
          const Candidate c{weighted_modulus(field, r, theta, power), r, theta, i, j};
          if (better(c, best)) best = c;
        }
      }
    } catch (...) {
      chunk_error[w] = std::current_exception();
    }
    chunk_best[w] = best;
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& err : chunk_error) {
    if (err) std::rethrow_exception(err);
  }
  Candidate best;
  for (const auto& c : chunk_best) {
    if (better(c, best)) best = c;
  }

  // Alternate golden-section line searches in r and theta around the best node.
  const double r_lo0 = radial_node(grid, std::max(best.i - 1, 0));
  const double r_hi0 = radial_node(grid, std::min(best.i + 1, grid.n_radial));
  const double dr = std::max(best.r - r_lo0, r_hi0 - best.r);
  const double dtheta = 2.0 * std::numbers::pi / grid.n_angular;
  const double theta_min = grid.upper_half_only ? 0.0 : -std::numeric_limits<double>::infinity();
  const double theta_max = grid.upper_half_only ? std::numbers::pi : std::numeric_limits<double>::infinity();

  double r_star = best.r;
  double theta_star = best.theta;
  double value = best.value;
  for (int round = 0; round < 50; ++round) {
    const double r_prev = r_star;
    const double theta_prev = theta_star;
    const double value_prev = value;

    const double a = std::max(0.0, r_star - dr);
    const double b = std::min(grid.r_max, r_star + dr);
    const auto [r_new, v_r] = golden_section_maximize(
        [&](double r) { return weighted_modulus(field, r, theta_star, power); }, a, b);
    if (v_r > value) {
      r_star = r_new;
      value = v_r;
    }
    if (r_star > 0.0) {
      const double ta = std::max(theta_min, theta_star - dtheta);
      const double tb = std::min(theta_max, theta_star + dtheta);
      const auto [t_new, v_t] = golden_section_maximize(
          [&](double t) { return weighted_modulus(field, r_star, t, power); }, ta, tb);
      if (v_t > value) {
        theta_star = t_new;
        value = v_t;
      }
    }
    if (std::abs(r_star - r_prev) < 1e-10 && std::abs(theta_star - theta_prev) < 1e-10 &&
        value - value_prev <= 1e-15 * std::max(1.0, value)) {
      break;
    }
  }
  return {value, r_star, wrap_angle(theta_star), value > best.value};
}

}  // namespace detail

/// sup over the disk of (1 - |z|^2) |P(z)|: polar grid scan with nodes
/// clustered toward r_max, then alternating golden-section refinement.
/// The result is a lower bound of the true supremum and is independent of
/// the thread count.
inline SupResult sup_hyperbolic_norm(const PreSchwarzianField& field, const GridSpec& grid = {},
                                     unsigned threads = default_thread_count()) {
  return detail::grid_supremum(field, grid, 0, threads);
}

/// Becker functional sup (1 - |z|^2) |z P(z)|; a value <= 1 certifies univalence.
inline SupResult becker_functional(const PreSchwarzianField& field, const GridSpec& grid = {},
                                   unsigned threads = default_thread_count()) {
  return detail::grid_supremum(field, grid, 1, threads);
}

/// Maximum of (1 - r^2) |P(r e^{i theta})| over r in [0, r_max].
inline SupResult sup_on_ray(const PreSchwarzianField& field, double theta, double r_max = kDefaultRMax,
                            int n_scan = 4096) {
  if (!(r_max > 0.0 && r_max <= kMaxRMax)) {
    throw DomainError("sup_on_ray: r_max = " + std::to_string(r_max) + " must lie in (0, 1 - 1e-9]");
  }
  const GridSpec nodes{n_scan, 16, r_max};
  const auto profile = [&](double r) { return detail::weighted_modulus(field, r, theta, 0); };
  int best_i = 0;
  double best_v = -1.0;
  for (int i = 0; i <= n_scan; ++i) {
    const double v = profile(detail::radial_node(nodes, i));
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double a = detail::radial_node(nodes, std::max(best_i - 1, 0));
  const double b = detail::radial_node(nodes, std::min(best_i + 1, n_scan));
  const auto [r_star, v_star] = golden_section_maximize(profile, a, b);
  if (v_star > best_v) {
    return {v_star, r_star, detail::wrap_angle(theta), true};
  }
  return {best_v, detail::radial_node(nodes, best_i), detail::wrap_angle(theta), false};
}

inline SupResult sup_on_positive_axis(const PreSchwarzianField& field, double r_max = kDefaultRMax) {
  return sup_on_ray(field, 0.0, r_max);
}

}  // namespace preschwarz
