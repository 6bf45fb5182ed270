#pragma once

#include <optional>
#include <string>
#include <vector>

#include "masing/curves.hpp"
#include "masing/field.hpp"
#include "masing/march.hpp"

namespace masing {

/// J = x_u y_v − x_v y_u on every node of every level.
struct JacobianField {
  std::vector<std::vector<double>> values;  ///< [level][node]
  double min_off_axis = 0.0;  ///< min over levels k >= 1
  double v_positive = 0.0;    ///< largest |v| such that J > 0 on every level in (0, |v|]
  std::size_t last_positive_level = 0;
};

/// x_u, y_u spectrally; x_v, y_v from the system's right-hand side.
JacobianField jacobian(const StripSolution& strip);

/// J_v on the axis: (β'α'' − β''α')/D at (0, 0, 0, α(u_j), β(u_j)).
/// Throws Error(Ellipticity)/Error(OutOfBox) from the field.
std::vector<double> jv_axis(const PeriodicCurve& curve, const CoefficientField& field, int n_u);

inline constexpr double kHessianGuard = 1e-10;

struct NodeHessian {
  double r = 0.0, s = 0.0, t = 0.0;  ///< z_xx, z_xy, z_yy
  double J = 0.0;
  double symmetry_defect = 0.0;      ///< |z_xy from p − z_xy from q|
  double relation_residual = 0.0;    ///< max residual of the four √D-relations
  bool valid = false;
};

enum class HessianGuard { Throw, Skip };

/// Chain rule [r s; s t] = [p_u p_v; q_u q_v]·[x_u x_v; y_u y_v]⁻¹ on one level.
/// Nodes with |J| <= kHessianGuard raise Error(SingularJacobian) under Throw and
/// are marked invalid under Skip.
std::vector<NodeHessian> hessian_from_strip(const StripSolution& strip, std::size_t level,
                                            HessianGuard guard = HessianGuard::Throw);

/// A r + 2B s + C t + r t − s² − E at one node.
double pde_residual_at(const FieldValues& f, double r, double s, double t);

struct ResidualReport {
  double max_abs = 0.0;
  double rms = 0.0;
  std::size_t count = 0;
  std::vector<std::vector<double>> per_node;  ///< [level][node]; NaN where not evaluated
};

inline constexpr double kResidualMinJ = 1e-6;
inline constexpr double kResidualMinVFraction = 0.2;

/// Residual over levels with |v| >= 0.2 R and nodes with |J| > 1e-6.
ResidualReport pde_residual(const StripSolution& strip, const CoefficientField& field);

/// Prescribed Gauss curvature: det D²z = K(x,y,z)·(1 + p² + q²)².
/// Throws Error(InvalidArgument) when K depends on p or q.
CoefficientField curvature_to_field(const Expr& K, const Box& box);
CoefficientField curvature_to_field(std::string_view K, const Box& box);

}  // namespace masing
