#include "masing/limit.hpp"

#include <cmath>
#include <memory>

#include "masing/error.hpp"
#include "masing/planar.hpp"

namespace masing {

std::vector<double> geometric_radii(double r0, int count) {
  if (!(r0 > 0.0) || count < 1) {
    throw Error(ErrorKind::InvalidArgument, "geometric_radii: need r0 > 0 and count >= 1");
  }
  std::vector<double> out(count);
  for (int k = 0; k < count; ++k) out[k] = std::ldexp(r0, -k);
  return out;
}

LimitGradientResult limit_gradient(const GradientSampler& sampler, std::span<const double> radii,
                                   const LimitGradientOptions& options) {
  const std::size_t m = radii.size();
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "limit_gradient: need at least two radii");
  for (std::size_t i = 0; i < m; ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] < radii[i - 1]))) {
      throw Error(ErrorKind::InvalidArgument,
                  "limit_gradient: radii must be positive and strictly decreasing");
    }
  }
  const int n = options.n_angles;
  if (n <= 2 * options.fit_degree) {
    throw Error(ErrorKind::InvalidArgument, "limit_gradient: n_angles must exceed 2*fit_degree");
  }

  LimitGradientResult out;
  out.limit_samples.resize(n);
  std::vector<std::array<double, 2>> T(m);
  for (int j = 0; j < n; ++j) {
    const double theta = -kTwoPi * j / n;
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2 g = sampler(radii[i] * std::cos(theta), radii[i] * std::sin(theta));
      T[i] = g;
    }
    // Neville tableau towards r = 0.
    std::vector<std::array<double, 2>> prev = T;
    std::array<double, 2> last_correction{0.0, 0.0};
    for (std::size_t level = 1; level < m; ++level) {
      std::vector<std::array<double, 2>> cur(m);
      for (std::size_t i = level; i < m; ++i) {
        const double w = radii[i] / (radii[i - level] - radii[i]);
        for (int c = 0; c < 2; ++c) cur[i][c] = prev[i][c] + (prev[i][c] - prev[i - 1][c]) * w;
      }
      if (level == m - 1) {
        for (int c = 0; c < 2; ++c) last_correction[c] = cur[m - 1][c] - prev[m - 1][c];
      }
      prev = std::move(cur);
    }
    out.limit_samples[j] = prev[m - 1];
    out.extrapolation_residual =
        std::max(out.extrapolation_residual, std::hypot(last_correction[0], last_correction[1]));
  }
  out.curve = fit_curve(out.limit_samples, options.fit_degree);
  const int grid = std::max(options.classify_grid, 8 * (options.fit_degree + 1));
  out.report = classify_curve(out.curve, grid);
  return out;
}

Vec2 radial_fig1_gradient(double x, double y) {
  const double r = std::hypot(x, y);
  if (!(r > 0.0)) throw Error(ErrorKind::Coverage, "radial-fig1: gradient undefined at the origin");
  const double g = std::sqrt(1.0 + r * r) / r;
  return {x * g, y * g};
}

double radial_fig1_height(double r) { return 0.5 * (r * std::sqrt(1.0 + r * r) + std::asinh(r)); }

GradientSampler patch_sampler(const GraphPatch& patch) {
  auto interp = std::make_shared<const PatchInterpolant>(patch);
  return [interp](double x, double y) { return interp->gradient(x, y); };
}

double curve_hausdorff(const PeriodicCurve& a, const PeriodicCurve& b, int samples) {
  const auto pa = sample_curve(a, samples);
  const auto pb = sample_curve(b, samples);
  return planar::hausdorff_distance(pa, pb);
}

}  // namespace masing
