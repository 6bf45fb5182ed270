#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "masing/curves.hpp"
#include "masing/error.hpp"
#include "support.hpp"

using namespace masing;
using masing::testing::random_convex_curve;
using masing::testing::random_curve;
using masing::testing::uniform;

namespace {

void expect_point(const CurvePoint& c, std::array<double, 6> want, double tol = 1e-15) {
  EXPECT_NEAR(c.alpha, want[0], tol);
  EXPECT_NEAR(c.beta, want[1], tol);
  EXPECT_NEAR(c.d_alpha, want[2], tol);
  EXPECT_NEAR(c.d_beta, want[3], tol);
  EXPECT_NEAR(c.dd_alpha, want[4], tol);
  EXPECT_NEAR(c.dd_beta, want[5], tol);
}

double circular_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

}  // namespace

TEST(EvalCurve, CircleAtZero) {
  expect_point(eval_curve(builtin_curve("circle"), 0.0), {1, 0, 0, -1, -1, 0});
}

TEST(EvalCurve, CircleQuarterTurn) {
  const double u = std::numbers::pi / 2;
  expect_point(eval_curve(builtin_curve("circle"), u), {0, -1, -1, 0, 0, 1});
}

TEST(EvalCurve, DoubleCoverAtZero) {
  expect_point(eval_curve(builtin_curve("remark42-double"), 0.0), {0, 0.375, 1, 1, 0, 0});
}

TEST(EvalCurve, PrimitiveHalvesDerivatives) {
  const auto prim = builtin_curve("remark42");
  expect_point(eval_curve(prim, 0.0), {0, 0.375, 0.5, 0.5, 0, 0});
  EXPECT_EQ(primitive(builtin_curve("remark42-double")), prim);
  EXPECT_EQ(period_divisor(builtin_curve("remark42-double")), 2);
  EXPECT_EQ(period_divisor(prim), 1);
}

TEST(EvalCurve, ExactPeriodicity) {
  auto g = masing::testing::rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = random_curve(g, 5, 1.0);
    const double u = uniform(g, 0.0, kTwoPi);
    const auto a = eval_curve(c, u), b = eval_curve(c, u + kTwoPi);
    EXPECT_NEAR(a.alpha, b.alpha, 1e-12);
    EXPECT_NEAR(a.beta, b.beta, 1e-12);
    EXPECT_NEAR(a.dd_alpha, b.dd_alpha, 1e-10);
    EXPECT_NEAR(a.dd_beta, b.dd_beta, 1e-10);
  }
}

TEST(EvalCurve, FiniteDifferenceOrder) {
  auto g = masing::testing::rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_curve(g, 4, 1.0);
    const double u = uniform(g, 0.0, kTwoPi);
    const auto exact = eval_curve(c, u);
    auto err = [&](double h) {
      const auto p = eval_curve(c, u + h), m = eval_curve(c, u - h);
      return std::hypot((p.alpha - m.alpha) / (2 * h) - exact.d_alpha,
                        (p.beta - m.beta) / (2 * h) - exact.d_beta);
    };
    const double e1 = err(1e-2), e2 = err(5e-3);
    if (e1 < 1e-12) continue;
    EXPECT_GE(std::log2(e1 / e2), 1.9);
  }
}

TEST(Classify, CircleAndEllipseMargins) {
  const auto circle = classify_curve(builtin_curve("circle"), 1024);
  EXPECT_NEAR(circle.convexity_margin, 1.0, 1e-12);
  EXPECT_NEAR(circle.regularity_margin, 1.0, 1e-12);
  EXPECT_TRUE(circle.strictly_convex);
  EXPECT_TRUE(circle.jordan());
  EXPECT_EQ(circle.orientation, Orientation::Negative);

  const auto ellipse = classify_curve(builtin_curve("ellipse"), 1024);
  EXPECT_NEAR(ellipse.convexity_margin, 0.48, 1e-12);
  EXPECT_NEAR(ellipse.regularity_margin, 0.6, 1e-9);
  EXPECT_TRUE(ellipse.strictly_convex);
}

TEST(Classify, FlatPointIsNotStrictlyConvex) {
  const auto r = classify_curve(builtin_curve("remark42"), 1024);
  EXPECT_NEAR(r.convexity_margin, 0.0, 1e-12);
  EXPECT_LT(circular_distance(r.u_star, 0.0), 1e-4);
  EXPECT_FALSE(r.strictly_convex);
  EXPECT_TRUE(r.regular);
  EXPECT_TRUE(r.jordan());
}

TEST(Classify, DoubleCoverIsNotJordan) {
  const auto r = classify_curve(builtin_curve("remark42-double"), 1024);
  EXPECT_EQ(r.period_divisor, 2);
  EXPECT_TRUE(r.embedded);
  EXPECT_FALSE(r.jordan());
}

TEST(Classify, LimaconAndBean) {
  const auto lim = classify_curve(builtin_curve("limacon"), 1024);
  EXPECT_TRUE(lim.strictly_convex);
  EXPECT_FALSE(lim.embedded);
  const auto bean = classify_curve(builtin_curve("bean"), 1024);
  EXPECT_TRUE(bean.regular);
  EXPECT_FALSE(bean.strictly_convex);
  EXPECT_EQ(bean.orientation, Orientation::Indefinite);
}

TEST(Classify, GridTooCoarse) {
  try {
    classify_curve(builtin_curve("bean"), 16);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(Classify, ReversalFlipsOrientation) {
  auto g = masing::testing::rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_convex_curve(g);
    const auto a = classify_curve(c, 512);
    const auto b = classify_curve(reversed(c), 512);
    EXPECT_EQ(a.orientation, Orientation::Negative);
    EXPECT_EQ(b.orientation, Orientation::Positive);
    EXPECT_NEAR(b.convexity_max, -a.convexity_margin, 1e-10);
    EXPECT_EQ(oriented_negatively(reversed(c)), c);
    EXPECT_EQ(oriented_negatively(c), c);
  }
}

TEST(Classify, TranslationAndShiftInvariance) {
  auto g = masing::testing::rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_convex_curve(g);
    const Vec2 t{uniform(g, -1, 1), uniform(g, -1, 1)};
    const auto a = classify_curve(c, 512);
    const auto b = classify_curve(translated(c, t), 512);
    const auto s = classify_curve(shifted(c, uniform(g, 0, kTwoPi)), 512);
    EXPECT_NEAR(a.convexity_margin, b.convexity_margin, 1e-12);
    EXPECT_NEAR(a.convexity_margin, s.convexity_margin, 1e-10);
    EXPECT_NEAR(a.regularity_margin, s.regularity_margin, 1e-10);
  }
}

TEST(SignedCurvature, Circles) {
  EXPECT_NEAR(signed_curvature(builtin_curve("circle"), 0.3), -1.0, 1e-15);
  for (double rho : {0.1, 0.5, 2.0, 7.0}) {
    const PeriodicCurve c({0, rho}, {0, 0}, {0, 0}, {0, -rho});
    EXPECT_NEAR(signed_curvature(c, 1.1), -1.0 / rho, 1e-12 / rho);
    EXPECT_NEAR(signed_curvature(reversed(c), 1.1), 1.0 / rho, 1e-12 / rho);
  }
  EXPECT_NEAR(signed_curvature(builtin_curve("remark42"), 0.0), 0.0, 1e-15);
}

TEST(SignedCurvature, TranslationInvariant) {
  auto g = masing::testing::rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = random_curve(g, 3, 1.0);
    const double u = uniform(g, 0, kTwoPi);
    if (eval_curve(c, u).speed() < 1e-3) continue;
    const Vec2 t{uniform(g, -5, 5), uniform(g, -5, 5)};
    EXPECT_NEAR(signed_curvature(c, u), signed_curvature(translated(c, t), u), 1e-9);
  }
}

TEST(SignedCurvature, DegenerateSpeed) {
  const PeriodicCurve point({0.5}, {0}, {0.25}, {0});
  try {
    signed_curvature(point, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateSpeed);
  }
}

TEST(Curves, FitRecoversCoefficients) {
  auto g = masing::testing::rng(16);
  const auto c = random_curve(g, 6, 1.0);
  const auto fit = fit_curve(sample_curve(c, 64), 6);
  for (int k = 0; k <= 6; ++k) {
    EXPECT_NEAR(fit.alpha_cos()[k], c.alpha_cos()[k], 1e-14);
    EXPECT_NEAR(fit.beta_sin()[k], c.beta_sin()[k], 1e-14);
  }
  EXPECT_THROW(fit_curve(sample_curve(c, 10), 6), Error);
}

TEST(Curves, ConstructorAndBuiltins) {
  EXPECT_THROW(PeriodicCurve({0, 1}, {0}, {0, 0}, {0, 0}), Error);
  for (const auto& name : builtin_curve_names()) EXPECT_NO_THROW(builtin_curve(name));
  try {
    builtin_curve("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownName);
  }
  EXPECT_EQ(to_string(Orientation::Negative), "negative");
}
