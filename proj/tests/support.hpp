#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "masing/curves.hpp"
#include "masing/march.hpp"

namespace masing::testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

/// Random curve with harmonics up to `degree` and coefficients in [-amp, amp].
inline PeriodicCurve random_curve(std::mt19937_64& g, int degree, double amp) {
  std::vector<double> ac(degree + 1), as(degree + 1), bc(degree + 1), bs(degree + 1);
  for (int k = 0; k <= degree; ++k) {
    ac[k] = uniform(g, -amp, amp);
    bc[k] = uniform(g, -amp, amp);
    as[k] = k == 0 ? 0.0 : uniform(g, -amp, amp);
    bs[k] = k == 0 ? 0.0 : uniform(g, -amp, amp);
  }
  return PeriodicCurve(ac, as, bc, bs);
}

/// Ellipse-like negatively oriented curve with small higher harmonics; redrawn
/// until strictly convex.
inline PeriodicCurve random_convex_curve(std::mt19937_64& g, double scale = 1.0) {
  for (;;) {
    const double a = uniform(g, 0.5, 1.0), b = uniform(g, 0.5, 1.0);
    std::vector<double> ac{0, a, uniform(g, -0.02, 0.02), uniform(g, -0.01, 0.01)};
    std::vector<double> as{0, 0, uniform(g, -0.02, 0.02), uniform(g, -0.01, 0.01)};
    std::vector<double> bc{0, 0, uniform(g, -0.02, 0.02), uniform(g, -0.01, 0.01)};
    std::vector<double> bs{0, -b, uniform(g, -0.02, 0.02), uniform(g, -0.01, 0.01)};
    for (auto* v : {&ac, &as, &bc, &bs}) {
      for (auto& c : *v) c *= scale;
    }
    PeriodicCurve curve(ac, as, bc, bs);
    if (classify_curve(curve, 256).strictly_convex) return curve;
  }
}

/// Exact strip of the paraboloid z = (x² + y²)/2 under det D²z = 1:
/// x + iy = e^{−v} e^{iu}, (p, q) = (x, y).
inline StripSolution paraboloid_strip(int n_u, int levels, double dv) {
  StripSolution strip;
  strip.params.n_u = n_u;
  strip.params.dv = dv;
  strip.params.R = dv * (levels - 1);
  strip.field = builtin_field("pure-one");
  strip.curve = builtin_curve("circle");
  for (int k = 0; k < levels; ++k) {
    const double v = k * dv;
    auto level = make_level(n_u);
    for (int j = 0; j < n_u; ++j) {
      const double u = kTwoPi * j / n_u;
      const double x = std::exp(-v) * std::cos(u), y = std::exp(-v) * std::sin(u);
      level[kX][j] = x;
      level[kY][j] = y;
      level[kZ][j] = 0.5 * (x * x + y * y);
      level[kP][j] = x;
      level[kQ][j] = y;
    }
    strip.v.push_back(v);
    strip.levels.push_back(std::move(level));
    strip.diagnostics.push_back({});
  }
  return strip;
}

}  // namespace masing::testing
