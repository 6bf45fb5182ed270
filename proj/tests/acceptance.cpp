// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "masing/curves.hpp"
#include "masing/error.hpp"
#include "masing/field.hpp"
#include "masing/geometry.hpp"
#include "masing/graph.hpp"
#include "masing/limit.hpp"
#include "masing/march.hpp"
#include "masing/sphere.hpp"

using namespace masing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Outcome::check(bool ok, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  if (!detail.empty()) detail += "; ";
  detail += buf;
  if (!ok) {
    detail += " [x]";
    pass = false;
  }
}

MarchParams circle_params() {
  MarchParams p;
  p.R = 0.15;
  p.n_u = 128;
  p.dv = 1e-3;
  return p;
}

double max_abs_diff(const Level& a, const Level& b) {
  double m = 0.0;
  for (int c = 0; c < kNumComponents; ++c) {
    for (std::size_t j = 0; j < a[c].size(); ++j) m = std::max(m, std::abs(a[c][j] - b[c][j]));
  }
  return m;
}

Outcome radial_oracle() {
  Outcome o;
  const auto strip = march(builtin_curve("circle"), builtin_field("pure-one"), circle_params());
  const auto patch = reconstruct_graph(strip);
  double ez = 0.0, eg = 0.0;
  for (const auto& s : patch.samples) {
    const double r = std::hypot(s.x, s.y);
    ez = std::max(ez, std::abs(s.z - radial_fig1_height(r)));
    eg = std::max(eg, std::abs(std::hypot(s.p, s.q) - std::sqrt(1.0 + r * r)));
  }
  o.check(strip.stop == StopReason::Completed, "march %s", std::string(to_string(strip.stop)).c_str());
  o.check(ez <= 1e-4, "max|z - z_oracle| = %.3e over r in [%.4f, %.4f]", ez, patch.r_min,
          patch.r_max);
  o.check(eg <= 1e-4, "max||grad z| - sqrt(1+r^2)| = %.3e", eg);
  return o;
}

Outcome axis_jacobian() {
  Outcome o;
  const auto field = builtin_field("pure-one");
  struct Case {
    const char* name;
    double expected;
  };
  for (const Case c : {Case{"circle", 1.0}, Case{"ellipse", 0.48}}) {
    const auto curve = builtin_curve(c.name);
    auto params = circle_params();
    params.R = 2e-3;
    const auto jv = jv_axis(curve, field, params.n_u);

    // The formula itself, against a direct evaluation of the curve derivatives.
    double e_formula = 0.0;
    for (int j = 0; j < params.n_u; ++j) {
      e_formula = std::max(e_formula, std::abs(jv[j] - c.expected));
    }

    // Centered difference of J across v = ±dv.
    const auto fwd = jacobian(march(curve, field, params));
    params.backward = true;
    const auto bwd = jacobian(march(curve, field, params));
    double e_fd = 0.0;
    for (int j = 0; j < params.n_u; ++j) {
      const double slope = (fwd.values[1][j] - bwd.values[1][j]) / (2.0 * params.dv);
      e_fd = std::max(e_fd, std::abs(slope - jv[j]));
    }
    o.check(e_formula <= 1e-12, "%s: |jv - %.2f| = %.2e", c.name, c.expected, e_formula);
    o.check(e_fd <= 1e-6, "%s: |centered FD - jv| = %.3e", c.name, e_fd);
  }
  return o;
}

Outcome pde_residuals() {
  Outcome o;
  const auto field = builtin_field("pure-one");
  const auto strip = march(builtin_curve("circle"), field, circle_params());
  const auto res = pde_residual(strip, field);
  o.check(res.max_abs <= 1e-3 && res.count > 0, "circle: max|rt - s^2 - 1| = %.3e over %zu nodes",
          res.max_abs, res.count);

  const auto f42 = builtin_field("remark42");
  auto p42 = circle_params();
  p42.R = 0.05;
  const auto s42 = march(builtin_curve("remark42"), f42, p42);
  double worst = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 1; k < s42.num_levels(); ++k) {
    if (std::abs(s42.v[k]) < kResidualMinVFraction * p42.R) continue;
    const auto hess = hessian_from_strip(s42, k, HessianGuard::Skip);
    for (int j = 0; j < s42.n_u(); ++j) {
      const auto& h = hess[j];
      if (!h.valid || !(std::abs(h.J) > kResidualMinJ)) continue;
      const auto f = eval_field(f42, state_at(s42.levels[k], j));
      const double lhs = (f.A + h.t) * (f.C + h.r) - (f.B - h.s) * (f.B - h.s);
      worst = std::max(worst, std::abs(lhs - f.D));
      ++count;
    }
  }
  o.check(worst <= 1e-3 && count > 0, "remark42: max|(A+t)(C+r) - (B-s)^2 - D| = %.3e over %zu nodes",
          worst, count);
  return o;
}

Outcome remark42_gallery() {
  Outcome o;
  const auto field = builtin_field("remark42");
  std::mt19937_64 rng(42);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    State5 s;
    double* comps[5] = {&s.x, &s.y, &s.z, &s.p, &s.q};
    for (int c = 0; c < 5; ++c) {
      const auto& b = field.box.bounds[c];
      *comps[c] = std::uniform_real_distribution<double>(b.lo, b.hi)(rng);
    }
    worst = std::max(worst, std::abs(eval_field(field, s).D - 1.0));
  }
  o.check(worst <= 1e-12, "max|D - 1| over 1e4 states = %.2e", worst);

  const auto curve = builtin_curve("remark42");
  const auto rep = classify_curve(curve, 1024);
  const double at0 = eval_curve(curve, 0.0).convexity();
  double min_else = INFINITY;
  for (int j = 1; j < 4096; ++j) {
    min_else = std::min(min_else, eval_curve(curve, kTwoPi * j / 4096).convexity());
  }
  o.check(std::abs(at0) <= 1e-15 && std::abs(rep.convexity_margin) <= 1e-9 && !rep.strictly_convex,
          "convexity at u=0 = %.1e, margin = %.1e at u* = %.2e", at0, rep.convexity_margin,
          rep.u_star);
  o.check(min_else > 0.0, "min convexity on u != 0 grid = %.3e", min_else);

  auto params = circle_params();
  params.R = 0.05;
  const auto strip = march(curve, field, params);
  const auto jac = jacobian(strip);
  o.check(strip.stop == StopReason::Completed && jac.last_positive_level + 1 == strip.num_levels() &&
              jac.min_off_axis > 0.0,
          "min J on (0, %.2f] = %.3e", strip.v.back(), jac.min_off_axis);
  return o;
}

double round_trip_distance(const PeriodicCurve& curve, const CoefficientField& field, bool reflect,
                           double* extrap) {
  const auto build_field = reflect ? reflect_field(field) : field;
  const auto strip = march(curve, build_field, circle_params());
  auto patch = reconstruct_graph(strip);
  if (reflect) patch = reflect_solution(patch, build_field);
  const double r0 = 0.8 * patch.r_max;
  const auto lg = limit_gradient(patch_sampler(patch), geometric_radii(r0));
  *extrap = lg.extrapolation_residual;
  return curve_hausdorff(curve, lg.curve);
}

Outcome round_trip() {
  Outcome o;
  const auto field = builtin_field("pure-one");
  for (const char* name : {"circle", "ellipse"}) {
    for (bool reflect : {false, true}) {
      double extrap = 0.0;
      const double d = round_trip_distance(builtin_curve(name), field, reflect, &extrap);
      o.check(d <= 1e-3, "%s eps=%d: Hausdorff %.2e (extrapolation residual %.1e)", name,
              reflect ? 1 : 0, d, extrap);
    }
  }
  return o;
}

Outcome convergence() {
  Outcome o;
  const auto curve = builtin_curve("circle");
  const auto field = builtin_field("pure-one");
  auto at_v = [&](double dv) {
    auto p = circle_params();
    p.R = 0.1;
    p.dv = dv;
    return march(curve, field, p).levels.back();
  };
  const Level ref = at_v(1e-5);
  const double steps[3] = {4e-3, 2e-3, 1e-3};
  double err[3], low[3];
  Spectral sp128(128);
  for (int i = 0; i < 3; ++i) {
    const Level L = at_v(steps[i]);
    err[i] = max_abs_diff(L, ref);
    // Diagnostic only: RMS error in the modes k <= 2 carried by the exact solution.
    low[i] = 0.0;
    for (int c = 0; c < kNumComponents; ++c) {
      std::vector<double> d(L[c].size());
      for (std::size_t j = 0; j < d.size(); ++j) d[j] = L[c][j] - ref[c][j];
      const auto e = sp128.mode_energy(d);
      low[i] = std::max(low[i], std::sqrt(e[0] + e[1] + e[2]));
    }
  }
  const double o1 = std::log2(err[0] / err[1]);
  const double o2 = std::log2(err[1] / err[2]);
  o.check(std::min(o1, o2) >= 3.5, "max-norm errors %.2e %.2e %.2e, observed orders %.2f %.2f",
          err[0], err[1], err[2], o1, o2);
  o.check(true, "low-mode errors %.2e %.2e %.2e, orders %.2f %.2f (diagnostic)", low[0], low[1],
          low[2], std::log2(low[0] / low[1]), std::log2(low[1] / low[2]));

  const auto strip = march(curve, field, circle_params());
  Spectral sp(strip.n_u());
  double integ = 0.0, height = 0.0;
  for (const auto& L : strip.levels) {
    const Level dv = assemble_rhs(L, field, sp);
    Level du = make_level(strip.n_u());
    for (int c = 0; c < kNumComponents; ++c) sp.derivative(L[c], du[c]);
    for (int j = 0; j < strip.n_u(); ++j) {
      integ = std::max(integ, std::abs(dv[kP][j] * du[kX][j] + dv[kQ][j] * du[kY][j] -
                                       du[kP][j] * dv[kX][j] - du[kQ][j] * dv[kY][j]));
      height = std::max(height,
                        std::abs(du[kZ][j] - (L[kP][j] * du[kX][j] + L[kQ][j] * du[kY][j])));
    }
  }
  o.check(integ <= 1e-8, "integrability residual %.2e", integ);
  o.check(height <= 1e-8, "height compatibility residual %.2e", height);
  return o;
}

GraphPatch paraboloid_patch() {
  GraphPatch patch;
  patch.n_u = 64;
  for (int k = 0; k < 12; ++k) {
    const double rho = 0.05 + 0.02 * k;
    patch.v.push_back(rho);
    for (int j = 0; j < patch.n_u; ++j) {
      const double u = kTwoPi * j / patch.n_u;
      const double x = rho * std::cos(u), y = -rho * std::sin(u);
      patch.samples.push_back({x, y, 0.5 * (x * x + y * y), x, y, 1.0, 0.0, 1.0, rho, 0.0});
    }
  }
  patch.r_min = 0.05;
  patch.r_max = 0.27;
  patch.provenance = "paraboloid";
  return patch;
}

Outcome legendre_duality() {
  Outcome o;
  const auto para = paraboloid_patch();
  const auto twice = legendre(legendre(para, 0.0, 0.0), 0.0, 0.0);
  double e = 0.0;
  for (std::size_t i = 0; i < para.samples.size(); ++i) {
    const auto& a = para.samples[i];
    const auto& b = twice.samples[i];
    e = std::max({e, std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
  }
  o.check(e <= 1e-8, "paraboloid double transform error %.2e", e);

  const auto strip =
      march(builtin_curve("circle"), builtin_field("pure-one"), circle_params());
  const auto patch = reconstruct_graph(strip);
  const auto dual = legendre(patch, 2.0, 2.0);
  const auto normals = surface_normals(dual);
  double en = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < patch.samples.size(); ++i) {
    if (!normals[i]) continue;
    const auto& s = patch.samples[i];
    const double w = std::sqrt(1.0 + s.x * s.x + s.y * s.y);
    const Vec3 expect = {-s.x / w, -s.y / w, 1.0 / w};
    const auto& n = *normals[i];
    en = std::max({en, std::abs(n[0] - expect[0]), std::abs(n[1] - expect[1]),
                   std::abs(n[2] - expect[2])});
    ++count;
  }
  o.check(en <= 1e-8 && count > 0, "circle a=c=2 dual normal error %.2e over %zu samples", en,
          count);
  return o;
}

Outcome sphere_correspondence() {
  Outcome o;
  double e_sphere = 0.0, e_plane = 0.0;
  std::string agree;
  bool all_agree = true;
  for (const auto& name : builtin_curve_names()) {
    const auto curve = builtin_curve(name);
    for (auto conv : {SphereConvention::CanonicalNormal, SphereConvention::Gnomonic}) {
      const auto pts = sample_curve(curve, 512);
      const auto sc = plane_sphere(pts, conv);
      const auto back = sphere_plane(sc, conv);
      const auto again = plane_sphere(back, conv);
      for (std::size_t j = 0; j < pts.size(); ++j) {
        e_plane = std::max({e_plane, std::abs(back[j][0] - pts[j][0]),
                            std::abs(back[j][1] - pts[j][1])});
        for (int c = 0; c < 3; ++c) {
          e_sphere = std::max(e_sphere, std::abs(again.samples[j][c] - sc.samples[j][c]));
        }
      }
      const bool planar = classify_curve(curve, 1024).strictly_convex;
      const bool spherical = classify_sphere_curve(sc).strictly_convex;
      if (planar != spherical) all_agree = false;
      if (conv == SphereConvention::CanonicalNormal) {
        agree += (agree.empty() ? "" : " ") + name + (planar ? "+" : "-") + (spherical ? "+" : "-");
      }
    }
  }
  o.check(e_sphere <= 1e-12, "sphere->plane->sphere error %.1e", e_sphere);
  o.check(e_plane <= 1e-12, "plane->sphere->plane error %.1e", e_plane);
  o.check(all_agree, "strict convexity planar/spherical: %s", agree.c_str());
  return o;
}

double max_residual(const StripSolution& strip) {
  return pde_residual(strip, strip.field).max_abs;
}

Outcome stability_guardrails() {
  Outcome o;
  const auto curve = builtin_curve("circle");
  const auto field = builtin_field("pure-one");
  auto params = circle_params();
  params.n_u = 256;

  const auto clean = march(curve, field, params);
  const double clean_res = max_residual(clean);
  o.check(clean.stop == StopReason::Completed, "clean run %s, max residual %.2e",
          std::string(to_string(clean.stop)).c_str(), clean_res);

  Level noisy = initial_level(curve, params.n_u);
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> noise(0.0, 1e-10);
  for (auto& f : noisy) {
    for (auto& v : f) v += noise(rng);
  }
  try {
    const auto strip = march_from(curve, field, params, noisy);
    const double res = max_residual(strip);
    o.check(res <= 10.0 * clean_res, "noisy run completed, max residual %.2e (clean %.2e)", res,
            clean_res);
  } catch (const MarchError& e) {
    o.check(e.kind() == ErrorKind::Instability, "noisy run aborted at level %zu: %s", e.level(),
            std::string(to_string(e.kind())).c_str());
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "radial oracle reproduction", radial_oracle},
      {2, "axis Jacobian formula", axis_jacobian},
      {3, "PDE residual", pde_residuals},
      {4, "remark42 gallery", remark42_gallery},
      {5, "round trip on both branches", round_trip},
      {6, "convergence and compatibility", convergence},
      {7, "Legendre involution and dual normal", legendre_duality},
      {8, "sphere correspondence", sphere_correspondence},
      {9, "stability guardrails", stability_guardrails},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %d %s (%.1fs): %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
