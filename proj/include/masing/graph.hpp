#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "masing/field.hpp"
#include "masing/march.hpp"

namespace masing {

struct PatchSample {
  double x = 0.0, y = 0.0, z = 0.0;
  double p = 0.0, q = 0.0;
  double r = 0.0, s = 0.0, t = 0.0;  ///< z_xx, z_xy, z_yy
  double J = 0.0;                    ///< Jacobian of the sampling chart
  double residual = 0.0;             ///< PDE residual w.r.t. the generating field (NaN if undefined)

  State5 state() const { return {x, y, z, p, q}; }
};

/// Samples of a solution graph over an annulus around the origin.
///
/// When n_u > 0 the samples are structured: level-major, n_u nodes per level
/// at u_j = 2πj/n_u, level k at chart height v[k]. The strip-derived patches
/// and every transform of them keep this structure.
struct GraphPatch {
  std::vector<PatchSample> samples;
  int n_u = 0;
  std::vector<double> v;
  double r_min = 0.0;  ///< inner radius of the covered annulus
  double r_max = 0.0;  ///< outer radius of the covered annulus
  bool multivalued = false;
  std::string provenance;

  std::size_t num_levels() const { return v.size(); }
  const PatchSample& at(std::size_t level, int j) const { return samples[level * n_u + j]; }
};

/// Emits samples at the images (x, y)(u_j, v_k) of the levels 1..K with J > 0
/// (K maximal), with Hessians and residuals. Image curves are tested for
/// simplicity, winding number one and mutual disjointness; failures flag the
/// patch multivalued instead of raising. Throws Error(SingularJacobian) when no
/// level off the axis has J > 0.
GraphPatch reconstruct_graph(const StripSolution& strip);

/// Recomputes every sample residual against `field`.
void recompute_residuals(GraphPatch& patch, const CoefficientField& field);

/// (x,y,z,p,q,r,s,t) ↦ (−x,−y,−z,p,q,−r,−s,−t). Residuals keep their values:
/// the reflected patch solves the equation of reflect_field(field).
/// Throws Error(NonPureField) unless field.is_pure().
GraphPatch reflect_solution(const GraphPatch& patch, const CoefficientField& field);

/// E(x,y,z,p,q) ↦ E(−x,−y,−z,p,q), box mirrored in x, y, z.
/// Throws Error(NonPureField) unless field.is_pure().
CoefficientField reflect_field(const CoefficientField& field);

/// Legendre transform of z* = z + (c/2)x² + (a/2)y² through its unit normal
/// N* = (−p − cx, −q − ay, 1)/‖·‖:
///   L = (−N₁/N₃, −N₂/N₃, −x N₁/N₃ − y N₂/N₃ − z*).
/// The dual carries gradient (x, y), Hessian inv([r+c s; s t+a]) (NaN when
/// singular), chart Jacobian J·det, and NaN residuals. Structure is kept.
GraphPatch legendre(const GraphPatch& patch, double a, double c);

/// Upward unit normals computed from the surface positions alone: spectral
/// ∂_u and fourth-order central differences in v. Defined on levels 2..K−3 of
/// a structured patch with uniform level spacing; std::nullopt elsewhere.
std::vector<std::optional<Vec3>> surface_normals(const GraphPatch& patch);

/// Evaluates a structured patch at arbitrary (x, y) by inverting the sampling
/// chart with Newton's method: trigonometric interpolation in u, six-point
/// Lagrange interpolation in v.
class PatchInterpolant {
 public:
  explicit PatchInterpolant(const GraphPatch& patch);

  struct Value {
    double z = 0.0, p = 0.0, q = 0.0;
    double u = 0.0, v = 0.0;
  };

  /// Throws Error(Coverage) when (x, y) lies outside the sampled region.
  Value eval(double x, double y) const;
  Vec2 gradient(double x, double y) const {
    const auto val = eval(x, y);
    return {val.p, val.q};
  }

 private:
  struct Eval {
    double f[5];
    double fu[5];
  };
  void eval_level(std::size_t k, double u, Eval& out, const std::vector<double>& cosk,
                  const std::vector<double>& sink) const;

  int n_u_ = 0;
  std::vector<double> v_;
  std::vector<std::array<std::vector<std::complex<double>>, 5>> coeffs_;  ///< [level][x,y,z,p,q]
  std::vector<Vec2> xy_;
};

}  // namespace masing
