#include "masing/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "masing/error.hpp"

namespace masing {

namespace {

struct LevelDerivatives {
  Level du;
  Level dv;
};

LevelDerivatives level_derivatives(const StripSolution& strip, std::size_t k, Spectral& sp) {
  const auto& level = strip.levels.at(k);
  LevelDerivatives d{make_level(strip.n_u()), assemble_rhs(level, strip.field, sp)};
  for (int c = 0; c < kNumComponents; ++c) sp.derivative(level[c], d.du[c]);
  return d;
}

}  // namespace

JacobianField jacobian(const StripSolution& strip) {
  const int n = strip.n_u();
  Spectral sp(n);
  JacobianField out;
  out.values.resize(strip.num_levels());
  out.min_off_axis = std::numeric_limits<double>::infinity();
  bool positive_so_far = true;
  for (std::size_t k = 0; k < strip.num_levels(); ++k) {
    const auto d = level_derivatives(strip, k, sp);
    auto& J = out.values[k];
    J.resize(n);
    double level_min = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      J[j] = d.du[kX][j] * d.dv[kY][j] - d.dv[kX][j] * d.du[kY][j];
      level_min = std::min(level_min, J[j]);
    }
    if (k == 0) continue;
    out.min_off_axis = std::min(out.min_off_axis, level_min);
    if (positive_so_far && level_min > 0.0) {
      out.v_positive = std::abs(strip.v[k]);
      out.last_positive_level = k;
    } else {
      positive_so_far = false;
    }
  }
  if (strip.num_levels() < 2) out.min_off_axis = 0.0;
  return out;
}

std::vector<double> jv_axis(const PeriodicCurve& curve, const CoefficientField& field, int n_u) {
  std::vector<double> out(n_u);
  for (int j = 0; j < n_u; ++j) {
    const auto c = eval_curve(curve, kTwoPi * j / n_u);
    const auto f = eval_field(field, State5{0.0, 0.0, 0.0, c.alpha, c.beta});
    out[j] = (c.d_beta * c.dd_alpha - c.dd_beta * c.d_alpha) / f.D;
  }
  return out;
}

std::vector<NodeHessian> hessian_from_strip(const StripSolution& strip, std::size_t level,
                                            HessianGuard guard) {
  const int n = strip.n_u();
  Spectral sp(n);
  const auto d = level_derivatives(strip, level, sp);
  const auto& L = strip.levels.at(level);
  std::vector<NodeHessian> out(n);
  for (int j = 0; j < n; ++j) {
    const double xu = d.du[kX][j], yu = d.du[kY][j], pu = d.du[kP][j], qu = d.du[kQ][j];
    const double xv = d.dv[kX][j], yv = d.dv[kY][j], pv = d.dv[kP][j], qv = d.dv[kQ][j];
    auto& h = out[j];
    h.J = xu * yv - xv * yu;
    if (!(std::abs(h.J) > kHessianGuard)) {
      if (guard == HessianGuard::Throw) {
        throw MarchError(ErrorKind::SingularJacobian,
                         "singular strip Jacobian J = " + std::to_string(h.J) + " at level " +
                             std::to_string(level) + ", node " + std::to_string(j),
                         level, j);
      }
      h.r = h.s = h.t = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double inv = 1.0 / h.J;
    h.r = (pu * yv - pv * yu) * inv;
    const double s_from_p = (pv * xu - pu * xv) * inv;
    const double s_from_q = (qu * yv - qv * yu) * inv;
    h.t = (qv * xu - qu * xv) * inv;
    h.s = 0.5 * (s_from_p + s_from_q);
    h.symmetry_defect = std::abs(s_from_p - s_from_q);

    const auto f = eval_field(strip.field, state_at(L, j));
    const double sd = std::sqrt(f.D);
    const double cr = f.C + h.r, bs = f.B - h.s, at = f.A + h.t;
    h.relation_residual = std::max({std::abs(sd * yv - (cr * xu - bs * yu)),
                                    std::abs(sd * yu - (-cr * xv + bs * yv)),
                                    std::abs(sd * xv - (bs * xu - at * yu)),
                                    std::abs(sd * xu - (-bs * xv + at * yv))});
    h.valid = true;
  }
  return out;
}

double pde_residual_at(const FieldValues& f, double r, double s, double t) {
  return f.A * r + 2.0 * f.B * s + f.C * t + r * t - s * s - f.E;
}

ResidualReport pde_residual(const StripSolution& strip, const CoefficientField& field) {
  ResidualReport out;
  const int n = strip.n_u();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.per_node.assign(strip.num_levels(), std::vector<double>(n, nan));
  double sum2 = 0.0;
  const double v_min = kResidualMinVFraction * strip.params.R;
  for (std::size_t k = 1; k < strip.num_levels(); ++k) {
    if (std::abs(strip.v[k]) < v_min) continue;
    const auto hess = hessian_from_strip(strip, k, HessianGuard::Skip);
    for (int j = 0; j < n; ++j) {
      const auto& h = hess[j];
      if (!h.valid || !(std::abs(h.J) > kResidualMinJ)) continue;
      const auto f = eval_field(field, state_at(strip.levels[k], j));
      const double res = pde_residual_at(f, h.r, h.s, h.t);
      out.per_node[k][j] = res;
      out.max_abs = std::max(out.max_abs, std::abs(res));
      sum2 += res * res;
      ++out.count;
    }
  }
  out.rms = out.count > 0 ? std::sqrt(sum2 / out.count) : 0.0;
  return out;
}

CoefficientField curvature_to_field(const Expr& K, const Box& box) {
  const auto vars = K.variables();
  if (vars.count(Var::P) || vars.count(Var::Q)) {
    throw Error(ErrorKind::InvalidArgument,
                "curvature_to_field: K may depend on x, y, z only, got " + K.to_string());
  }
  const Expr w = Expr::literal(1.0) + pow(Expr::variable(Var::P), Expr::literal(2.0)) +
                 pow(Expr::variable(Var::Q), Expr::literal(2.0));
  return pure_field(K * pow(w, Expr::literal(2.0)), box, "curvature(" + K.to_string() + ")");
}

CoefficientField curvature_to_field(std::string_view K, const Box& box) {
  return curvature_to_field(parse_expr(K), box);
}

}  // namespace masing
