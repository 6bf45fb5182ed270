#include <gtest/gtest.h>

#include <cmath>

#include "masing/error.hpp"
#include "masing/geometry.hpp"
#include "support.hpp"

using namespace masing;

namespace {

MarchParams params(double R, int n_u = 64) {
  MarchParams p;
  p.R = R;
  p.n_u = n_u;
  return p;
}

}  // namespace

TEST(Jacobian, ZeroOnAxisPositiveAbove) {
  const auto strip = march(builtin_curve("ellipse"), builtin_field("pure-one"), params(0.05));
  const auto J = jacobian(strip);
  for (double x : J.values[0]) EXPECT_NEAR(x, 0.0, 1e-15);
  for (double x : J.values[1]) EXPECT_GT(x, 0.0);
  EXPECT_GT(J.min_off_axis, 0.0);
  EXPECT_EQ(J.last_positive_level, strip.num_levels() - 1);
  EXPECT_NEAR(J.v_positive, 0.05, 1e-12);
}

TEST(Jacobian, CircleClosedForm) {
  const auto strip = march(builtin_curve("circle"), builtin_field("pure-one"), params(0.1));
  const auto J = jacobian(strip);
  for (std::size_t k = 0; k < strip.num_levels(); k += 10) {
    const double want = 0.5 * std::sinh(2 * strip.v[k]);
    for (double x : J.values[k]) EXPECT_NEAR(x, want, 1e-12);
  }
}

TEST(JvAxis, Examples) {
  for (double x : jv_axis(builtin_curve("circle"), builtin_field("pure-one"), 32)) {
    EXPECT_NEAR(x, 1.0, 1e-15);
  }
  for (double x : jv_axis(builtin_curve("ellipse"), builtin_field("pure-one"), 32)) {
    EXPECT_NEAR(x, 0.48, 1e-15);
  }
  EXPECT_NEAR(jv_axis(builtin_curve("remark42"), builtin_field("remark42"), 32)[0], 0.0, 1e-15);
}

TEST(JvAxis, MatchesFiniteDifference) {
  auto g = masing::testing::rng(61);
  for (int trial = 0; trial < 4; ++trial) {
    const auto curve = masing::testing::random_convex_curve(g);
    auto p = params(2e-4, 64);
    p.dv = 1e-4;
    const auto strip = march(curve, builtin_field("pure-one"), p);
    const auto J = jacobian(strip);
    const auto jv = jv_axis(curve, builtin_field("pure-one"), 64);
    for (int j = 0; j < 64; ++j) {
      const double fd = (-3 * J.values[0][j] + 4 * J.values[1][j] - J.values[2][j]) / (2 * 1e-4);
      EXPECT_NEAR(fd, jv[j], 1e-6 * std::max(1.0, std::abs(jv[j])));
    }
  }
}

TEST(Hessian, ParaboloidChart) {
  const auto strip = masing::testing::paraboloid_strip(64, 11, 0.01);
  for (std::size_t k : {0u, 5u, 10u}) {
    for (const auto& h : hessian_from_strip(strip, k)) {
      ASSERT_TRUE(h.valid);
      EXPECT_NEAR(h.r, 1.0, 1e-12);
      EXPECT_NEAR(h.s, 0.0, 1e-12);
      EXPECT_NEAR(h.t, 1.0, 1e-12);
      EXPECT_LT(h.symmetry_defect, 1e-12);
      EXPECT_LT(h.relation_residual, 1e-12);
    }
  }
  const auto res = pde_residual(strip, strip.field);
  EXPECT_GT(res.count, 0u);
  EXPECT_LT(res.max_abs, 1e-12);
}

TEST(Hessian, GuardOnAxis) {
  const auto strip = march(builtin_curve("circle"), builtin_field("pure-one"), params(0.01));
  EXPECT_THROW(hessian_from_strip(strip, 0, HessianGuard::Throw), MarchError);
  for (const auto& h : hessian_from_strip(strip, 0, HessianGuard::Skip)) {
    EXPECT_FALSE(h.valid);
    EXPECT_TRUE(std::isnan(h.r));
  }
}

TEST(Hessian, CircleInteriorIdentities) {
  const auto strip = march(builtin_curve("circle"), builtin_field("pure-one"), params(0.15));
  for (std::size_t k = 30; k < strip.num_levels(); k += 30) {
    for (const auto& h : hessian_from_strip(strip, k)) {
      EXPECT_NEAR(h.r * h.t - h.s * h.s, 1.0, 1e-9);
      EXPECT_LT(h.relation_residual, 1e-10);
    }
  }
}

TEST(Hessian, DeterminantIdentityGeneralField) {
  const auto field = builtin_field("remark42");
  const auto strip = march(builtin_curve("ellipse"), field, params(0.05, 128));
  for (std::size_t k = 20; k < strip.num_levels(); k += 15) {
    const auto hess = hessian_from_strip(strip, k);
    for (int j = 0; j < strip.n_u(); ++j) {
      const auto& h = hess[j];
      const auto f = eval_field(field, state_at(strip.levels[k], j));
      const double lhs = (f.A + h.t) * (f.C + h.r) - (f.B - h.s) * (f.B - h.s);
      EXPECT_NEAR(lhs, f.D, 1e-6 * f.D);
      EXPECT_GT(f.C + h.r, 0.0);
    }
  }
}

TEST(Residual, EllipseExpZ) {
  const auto field = pure_field(parse_expr("exp(z)"), default_box());
  const auto strip = march(builtin_curve("ellipse"), field, params(0.1, 128));
  const auto res = pde_residual(strip, field);
  EXPECT_GT(res.count, 0u);
  EXPECT_LE(res.max_abs, 1e-2);
  EXPECT_LE(res.rms, res.max_abs);
  for (std::size_t k = 0; k < strip.num_levels(); ++k) {
    if (std::abs(strip.v[k]) < 0.019) {
      EXPECT_TRUE(std::isnan(res.per_node[k][0]));
    }
  }
}
