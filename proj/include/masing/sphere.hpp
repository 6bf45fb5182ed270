#pragma once

#include <span>
#include <vector>

#include "masing/curves.hpp"
#include "masing/state.hpp"

namespace masing {

/// Positively oriented orthonormal basis (e1, e2, v0): e1 × e2 = v0.
struct SphereBasis {
  Vec3 e1{1.0, 0.0, 0.0};
  Vec3 e2{0.0, 1.0, 0.0};
  Vec3 v0{0.0, 0.0, 1.0};

  /// Throws Error(InvalidArgument) unless orthonormal and positively oriented to 1e-12.
  void validate() const;
};

/// Samples σ(u_j) ∈ S², u_j = 2πj/n, with the reference basis.
struct SphereCurve {
  std::vector<Vec3> samples;
  SphereBasis basis;
};

/// Gnomonic: γ = (⟨σ,e1⟩, ⟨σ,e2⟩)/⟨σ,v0⟩ and σ = (α e1 + β e2 + v0)/‖·‖.
/// CanonicalNormal: σ = (−α e1 − β e2 + v0)/‖·‖, the upward normal of a graph
/// with gradient (α, β), and γ = −(⟨σ,e1⟩, ⟨σ,e2⟩)/⟨σ,v0⟩.
/// Round trips are identities only when both directions use the same convention.
enum class SphereConvention { Gnomonic, CanonicalNormal };

/// Throws Error(Hemisphere) when some ⟨σ, v0⟩ <= 0, Error(InvalidArgument)
/// when a sample is not a unit vector to 1e-12.
std::vector<Vec2> sphere_plane(const SphereCurve& curve,
                               SphereConvention conv = SphereConvention::CanonicalNormal);

SphereCurve plane_sphere(std::span<const Vec2> points,
                         SphereConvention conv = SphereConvention::CanonicalNormal,
                         const SphereBasis& basis = {});
SphereCurve plane_sphere(const PeriodicCurve& curve, int n,
                         SphereConvention conv = SphereConvention::CanonicalNormal,
                         const SphereBasis& basis = {});

struct SphereCurveReport {
  double regularity_margin = 0.0;  ///< min ‖σ'‖
  /// min of −det(σ, σ', σ'')/‖σ'‖³: the geodesic curvature with the sign
  /// that is positive on images of negatively oriented convex curves.
  double convexity_margin = 0.0;
  bool regular = false;
  bool strictly_convex = false;
};

/// Spectral derivatives on the uniform samples (even count required).
SphereCurveReport classify_sphere_curve(const SphereCurve& curve,
                                        double tol = kDefaultCurveTolerance);

}  // namespace masing
