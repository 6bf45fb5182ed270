#include "masing/graph.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <limits>

#include "masing/error.hpp"
#include "masing/geometry.hpp"
#include "masing/planar.hpp"

namespace masing {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<Vec2> image_curve(const GraphPatch& patch, std::size_t k) {
  std::vector<Vec2> pts(patch.n_u);
  for (int j = 0; j < patch.n_u; ++j) pts[j] = {patch.at(k, j).x, patch.at(k, j).y};
  return pts;
}

std::pair<double, double> radial_range(const std::vector<Vec2>& pts) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& p : pts) {
    const double r = std::hypot(p[0], p[1]);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

bool image_curves_injective(const GraphPatch& patch) {
  const std::size_t L = patch.num_levels();
  std::vector<std::vector<Vec2>> curves(L);
  std::vector<std::pair<double, double>> ranges(L);
  for (std::size_t k = 0; k < L; ++k) {
    curves[k] = image_curve(patch, k);
    ranges[k] = radial_range(curves[k]);
    if (std::abs(planar::winding_number_about_origin(curves[k])) != 1) return false;
    if (planar::closed_polyline_self_intersects(curves[k])) return false;
  }
  for (std::size_t a = 0; a < L; ++a) {
    for (std::size_t b = a + 1; b < L; ++b) {
      if (ranges[a].second < ranges[b].first || ranges[b].second < ranges[a].first) continue;
      if (planar::closed_polylines_intersect(curves[a], curves[b])) return false;
    }
  }
  return true;
}

}  // namespace

GraphPatch reconstruct_graph(const StripSolution& strip) {
  const auto jac = jacobian(strip);
  const std::size_t K = jac.last_positive_level;
  if (K == 0) {
    throw Error(ErrorKind::SingularJacobian,
                "reconstruct_graph: no level off the axis has J > 0 at every node");
  }
  const int n = strip.n_u();
  GraphPatch patch;
  patch.n_u = n;
  patch.provenance = "strip(curve degree " + std::to_string(strip.curve.degree()) + ", field " +
                     strip.field.name + ", R " + std::to_string(strip.params.R) + ")";
  patch.samples.reserve(K * n);
  for (std::size_t k = 1; k <= K; ++k) {
    patch.v.push_back(strip.v[k]);
    const auto hess = hessian_from_strip(strip, k, HessianGuard::Skip);
    for (int j = 0; j < n; ++j) {
      const State5 st = state_at(strip.levels[k], j);
      const auto& h = hess[j];
      PatchSample s{st.x, st.y, st.z, st.p, st.q, h.r, h.s, h.t, h.J, kNaN};
      if (h.valid) s.residual = pde_residual_at(eval_field(strip.field, st), h.r, h.s, h.t);
      patch.samples.push_back(s);
    }
  }
  patch.r_min = radial_range(image_curve(patch, 0)).second;
  patch.r_max = radial_range(image_curve(patch, patch.num_levels() - 1)).first;
  patch.multivalued = !image_curves_injective(patch);
  return patch;
}

void recompute_residuals(GraphPatch& patch, const CoefficientField& field) {
  for (auto& s : patch.samples) {
    s.residual = std::isfinite(s.r) ? pde_residual_at(eval_field(field, s.state()), s.r, s.s, s.t)
                                    : kNaN;
  }
}

GraphPatch reflect_solution(const GraphPatch& patch, const CoefficientField& field) {
  if (!field.is_pure()) {
    throw Error(ErrorKind::NonPureField,
                "reflect_solution: the reflection applies to det D²z = E only (A = B = C = 0)");
  }
  GraphPatch out = patch;
  for (auto& s : out.samples) {
    s.x = -s.x;
    s.y = -s.y;
    s.z = -s.z;
    s.r = -s.r;
    s.s = -s.s;
    s.t = -s.t;
  }
  out.provenance = "reflect(" + patch.provenance + ")";
  return out;
}

namespace {

class Substitute {
 public:
  // Rebuilds the tree with x, y, z replaced by their negatives.
  Expr operator()(const Expr& e) const {
    const auto& d = e.node().data;
    if (const auto* v = std::get_if<Expr::Node::Variable>(&d)) {
      if (v->var == Var::X || v->var == Var::Y || v->var == Var::Z) return -e;
      return e;
    }
    if (const auto* u = std::get_if<Expr::Node::Unary>(&d)) {
      return Expr::unary(u->op, (*this)(u->operand));
    }
    if (const auto* b = std::get_if<Expr::Node::Binary>(&d)) {
      return Expr::binary(b->op, (*this)(b->lhs), (*this)(b->rhs));
    }
    if (const auto* c = std::get_if<Expr::Node::Call>(&d)) {
      return Expr::call(c->func, (*this)(c->arg));
    }
    return e;
  }
};

}  // namespace

CoefficientField reflect_field(const CoefficientField& field) {
  if (!field.is_pure()) {
    throw Error(ErrorKind::NonPureField,
                "reflect_field: the reflection applies to det D²z = E only (A = B = C = 0)");
  }
  CoefficientField out = field;
  out.E = Substitute{}(field.E);
  for (int c : {kX, kY, kZ}) {
    out.box.bounds[c] = Interval{-field.box.bounds[c].hi, -field.box.bounds[c].lo};
  }
  out.name = "reflect(" + field.name + ")";
  return out;
}

GraphPatch legendre(const GraphPatch& patch, double a, double c) {
  GraphPatch out = patch;
  for (auto& s : out.samples) {
    const double n1 = -s.p - c * s.x;
    const double n2 = -s.q - a * s.y;
    const double norm = std::sqrt(n1 * n1 + n2 * n2 + 1.0);
    const double N1 = n1 / norm, N2 = n2 / norm, N3 = 1.0 / norm;
    const double zstar = s.z + 0.5 * c * s.x * s.x + 0.5 * a * s.y * s.y;

    const double hr = s.r + c, hs = s.s, ht = s.t + a;
    const double det = hr * ht - hs * hs;

    PatchSample d;
    d.x = -N1 / N3;
    d.y = -N2 / N3;
    d.z = -s.x * N1 / N3 - s.y * N2 / N3 - zstar;
    d.p = s.x;
    d.q = s.y;
    if (det != 0.0 && std::isfinite(det)) {
      d.r = ht / det;
      d.s = -hs / det;
      d.t = hr / det;
    } else {
      d.r = d.s = d.t = kNaN;
    }
    d.J = s.J * det;
    d.residual = kNaN;
    s = d;
  }
  out.r_min = kNaN;
  out.r_max = kNaN;
  char buf[96];
  std::snprintf(buf, sizeof buf, "legendre(a=%.17g, c=%.17g) of ", a, c);
  out.provenance = buf + patch.provenance;
  return out;
}

std::vector<std::optional<Vec3>> surface_normals(const GraphPatch& patch) {
  std::vector<std::optional<Vec3>> out(patch.samples.size());
  const std::size_t L = patch.num_levels();
  if (patch.n_u <= 0 || L < 5) return out;
  const double h = patch.v[1] - patch.v[0];
  for (std::size_t k = 1; k < L; ++k) {
    if (std::abs((patch.v[k] - patch.v[k - 1]) - h) > 1e-9 * std::abs(h)) {
      throw Error(ErrorKind::InvalidArgument, "surface_normals: levels are not uniformly spaced");
    }
  }
  const int n = patch.n_u;
  Spectral sp(n);
  std::vector<double> f(n), fu(n);
  for (std::size_t k = 2; k + 2 < L; ++k) {
    std::array<std::vector<double>, 3> Su;
    for (int c = 0; c < 3; ++c) {
      for (int j = 0; j < n; ++j) {
        const auto& s = patch.at(k, j);
        f[j] = c == 0 ? s.x : (c == 1 ? s.y : s.z);
      }
      sp.derivative(f, fu);
      Su[c] = fu;
    }
    for (int j = 0; j < n; ++j) {
      auto pos = [&](std::size_t kk) {
        const auto& s = patch.at(kk, j);
        return Vec3{s.x, s.y, s.z};
      };
      const Vec3 m2 = pos(k - 2), m1 = pos(k - 1), p1 = pos(k + 1), p2 = pos(k + 2);
      Vec3 sv;
      for (int c = 0; c < 3; ++c) sv[c] = (m2[c] - 8.0 * m1[c] + 8.0 * p1[c] - p2[c]) / (12.0 * h);
      const Vec3 su = {Su[0][j], Su[1][j], Su[2][j]};
      Vec3 nrm = {su[1] * sv[2] - su[2] * sv[1], su[2] * sv[0] - su[0] * sv[2],
                  su[0] * sv[1] - su[1] * sv[0]};
      const double len = std::sqrt(nrm[0] * nrm[0] + nrm[1] * nrm[1] + nrm[2] * nrm[2]);
      if (!(len > 0.0)) continue;
      const double sgn = nrm[2] < 0.0 ? -1.0 : 1.0;
      for (auto& x : nrm) x *= sgn / len;
      out[k * n + j] = nrm;
    }
  }
  return out;
}

PatchInterpolant::PatchInterpolant(const GraphPatch& patch) : n_u_(patch.n_u) {
  if (patch.n_u <= 0 || patch.num_levels() < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "PatchInterpolant: needs a structured patch with at least two levels");
  }
  std::vector<std::size_t> order(patch.num_levels());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  if (patch.v.back() < patch.v.front()) std::reverse(order.begin(), order.end());

  Spectral sp(n_u_);
  std::vector<double> buf(n_u_);
  for (std::size_t k : order) {
    v_.push_back(patch.v[k]);
    std::array<std::vector<std::complex<double>>, 5> c;
    for (int comp = 0; comp < 5; ++comp) {
      for (int j = 0; j < n_u_; ++j) {
        const auto& s = patch.at(k, j);
        const double vals[5] = {s.x, s.y, s.z, s.p, s.q};
        buf[j] = vals[comp];
      }
      c[comp] = sp.coefficients(buf);
    }
    coeffs_.push_back(std::move(c));
  }
  xy_.reserve(patch.samples.size());
  for (std::size_t k : order) {
    for (int j = 0; j < n_u_; ++j) xy_.push_back({patch.at(k, j).x, patch.at(k, j).y});
  }
}

void PatchInterpolant::eval_level(std::size_t k, double, Eval& out,
                                  const std::vector<double>& cosk,
                                  const std::vector<double>& sink) const {
  const int half = n_u_ / 2;
  for (int comp = 0; comp < 5; ++comp) {
    const auto& c = coeffs_[k][comp];
    double f = c[0].real();
    double fu = 0.0;
    for (int m = 1; m <= half; ++m) {
      const double w = (m == half) ? 1.0 : 2.0;
      const double re = c[m].real(), im = c[m].imag();
      f += w * (re * cosk[m] - im * sink[m]);
      if (m != half) fu += w * m * (-re * sink[m] - im * cosk[m]);
    }
    out.f[comp] = f;
    out.fu[comp] = fu;
  }
}

PatchInterpolant::Value PatchInterpolant::eval(double X, double Y) const {
  const std::size_t L = v_.size();
  const std::size_t m = std::min<std::size_t>(6, L);

  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xy_.size(); ++i) {
    const double d = std::hypot(xy_[i][0] - X, xy_[i][1] - Y);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  double u = kTwoPi * static_cast<double>(best % n_u_) / n_u_;
  double v = v_[best / n_u_];
  const double v_lo = v_.front();
  const double v_hi = v_.back();

  std::vector<double> cosk(n_u_ / 2 + 1), sink(n_u_ / 2 + 1);
  std::vector<double> w(m), dw(m);
  double vals[5] = {}, du[5] = {}, dv[5] = {};

  auto evaluate = [&](double uu, double vv) {
    for (int k = 0; k <= n_u_ / 2; ++k) {
      cosk[k] = std::cos(k * uu);
      sink[k] = std::sin(k * uu);
    }
    const auto it = std::lower_bound(v_.begin(), v_.end(), vv);
    std::ptrdiff_t centre = it - v_.begin();
    std::ptrdiff_t i0 = std::clamp<std::ptrdiff_t>(centre - static_cast<std::ptrdiff_t>(m / 2), 0,
                                                   static_cast<std::ptrdiff_t>(L - m));
    for (std::size_t a = 0; a < m; ++a) {
      double prod = 1.0;
      double dsum = 0.0;
      const double ta = v_[i0 + a];
      for (std::size_t b = 0; b < m; ++b) {
        if (b == a) continue;
        prod *= (vv - v_[i0 + b]) / (ta - v_[i0 + b]);
        double term = 1.0 / (ta - v_[i0 + b]);
        for (std::size_t c = 0; c < m; ++c) {
          if (c == a || c == b) continue;
          term *= (vv - v_[i0 + c]) / (ta - v_[i0 + c]);
        }
        dsum += term;
      }
      w[a] = prod;
      dw[a] = dsum;
    }
    std::fill(std::begin(vals), std::end(vals), 0.0);
    std::fill(std::begin(du), std::end(du), 0.0);
    std::fill(std::begin(dv), std::end(dv), 0.0);
    Eval e;
    for (std::size_t a = 0; a < m; ++a) {
      eval_level(i0 + a, uu, e, cosk, sink);
      for (int c = 0; c < 5; ++c) {
        vals[c] += w[a] * e.f[c];
        du[c] += w[a] * e.fu[c];
        dv[c] += dw[a] * e.f[c];
      }
    }
  };

  const double scale = std::max(std::hypot(X, Y), 1e-300);
  bool converged = false;
  for (int iter = 0; iter < 60; ++iter) {
    evaluate(u, v);
    const double fx = vals[0] - X;
    const double fy = vals[1] - Y;
    if (std::hypot(fx, fy) <= 1e-15 * scale) {
      converged = true;
      break;
    }
    const double det = du[0] * dv[1] - dv[0] * du[1];
    if (!(std::abs(det) > 0.0)) break;
    const double step_u = (dv[1] * fx - dv[0] * fy) / det;
    const double step_v = (-du[1] * fx + du[0] * fy) / det;
    u -= step_u;
    v = std::clamp(v - step_v, v_lo, v_hi);
    if (std::abs(step_u) < 1e-15 && std::abs(step_v) < 1e-15 * std::max(1.0, std::abs(v))) {
      evaluate(u, v);
      converged = std::hypot(vals[0] - X, vals[1] - Y) <= 1e-10 * scale;
      break;
    }
  }
  if (!converged) {
    evaluate(u, v);
    converged = std::hypot(vals[0] - X, vals[1] - Y) <= 1e-10 * scale;
  }
  if (!converged) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "point (%.6g, %.6g) is outside the sampled annulus", X, Y);
    throw Error(ErrorKind::Coverage, buf);
  }
  Value out;
  out.z = vals[2];
  out.p = vals[3];
  out.q = vals[4];
  out.u = std::fmod(std::fmod(u, kTwoPi) + kTwoPi, kTwoPi);
  out.v = v;
  return out;
}

}  // namespace masing
