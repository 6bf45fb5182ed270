#pragma once

#include <functional>
#include <span>
#include <vector>

#include "masing/curves.hpp"
#include "masing/graph.hpp"
#include "masing/state.hpp"

namespace masing {

/// Gradient (p, q) of a solution at a point of the punctured plane.
/// Samplers signal points they cannot evaluate with Error(Coverage).
using GradientSampler = std::function<Vec2(double x, double y)>;

struct LimitGradientOptions {
  int n_angles = 256;
  int fit_degree = 32;
  int classify_grid = 1024;
};

struct LimitGradientResult {
  PeriodicCurve curve;
  /// max over angles of |T_{K,K} − T_{K,K−1}|: the last Neville correction.
  double extrapolation_residual = 0.0;
  CurveReport report;
  std::vector<Vec2> limit_samples;  ///< extrapolated (p, q) at u_j
};

/// r_k = r0·2^{−k}, k = 0..count−1.
std::vector<double> geometric_radii(double r0, int count = 5);

/// Samples the gradient on circles of the given radii at angle θ = −u_j
/// (u_j = 2πj/n_angles), extrapolates each angle to r = 0 by Neville's
/// scheme, fits a Fourier curve and classifies it. The angle reversal matches
/// the negative orientation of limit gradients. Propagates Error(Coverage).
LimitGradientResult limit_gradient(const GradientSampler& sampler, std::span<const double> radii,
                                   const LimitGradientOptions& options = {});

/// Gradient of the rotationally symmetric solution of det D²z = 1 with
/// z_r = √(1 + r²): (x, y)·√(1 + r²)/r.
Vec2 radial_fig1_gradient(double x, double y);
/// ½(r√(1 + r²) + asinh r).
double radial_fig1_height(double r);

/// Samples a structured patch through PatchInterpolant.
GradientSampler patch_sampler(const GraphPatch& patch);

/// Hausdorff distance between the images of two curves, on dense polylines.
double curve_hausdorff(const PeriodicCurve& a, const PeriodicCurve& b, int samples = 4096);

}  // namespace masing
