#include "masing/curves.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "masing/error.hpp"
#include "masing/planar.hpp"

namespace masing {

PeriodicCurve::PeriodicCurve(std::vector<double> alpha_cos, std::vector<double> alpha_sin,
                             std::vector<double> beta_cos, std::vector<double> beta_sin)
    : alpha_cos_(std::move(alpha_cos)),
      alpha_sin_(std::move(alpha_sin)),
      beta_cos_(std::move(beta_cos)),
      beta_sin_(std::move(beta_sin)) {
  const auto n = alpha_cos_.size();
  if (n == 0 || alpha_sin_.size() != n || beta_cos_.size() != n || beta_sin_.size() != n) {
    throw Error(ErrorKind::InvalidArgument,
                "curve coefficient arrays must be non-empty and of equal length");
  }
  for (const auto* arr : {&alpha_cos_, &alpha_sin_, &beta_cos_, &beta_sin_}) {
    for (double c : *arr) {
      if (!std::isfinite(c)) throw Error(ErrorKind::InvalidArgument, "non-finite curve coefficient");
    }
  }
}

double CurvePoint::speed() const { return std::hypot(d_alpha, d_beta); }

CurvePoint eval_curve(const PeriodicCurve& curve, double u) {
  CurvePoint out;
  const auto& ac = curve.alpha_cos();
  const auto& as = curve.alpha_sin();
  const auto& bc = curve.beta_cos();
  const auto& bs = curve.beta_sin();
  out.alpha = ac[0];
  out.beta = bc[0];
  for (int k = 1; k <= curve.degree(); ++k) {
    const double c = std::cos(k * u);
    const double s = std::sin(k * u);
    const double kk = static_cast<double>(k);
    out.alpha += ac[k] * c + as[k] * s;
    out.beta += bc[k] * c + bs[k] * s;
    out.d_alpha += kk * (-ac[k] * s + as[k] * c);
    out.d_beta += kk * (-bc[k] * s + bs[k] * c);
    out.dd_alpha -= kk * kk * (ac[k] * c + as[k] * s);
    out.dd_beta -= kk * kk * (bc[k] * c + bs[k] * s);
  }
  return out;
}

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::Negative: return "negative";
    case Orientation::Positive: return "positive";
    case Orientation::Indefinite: return "indefinite";
  }
  return "indefinite";
}

namespace {

double wrap_angle(double u) {
  double w = std::fmod(u, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

// Minimizes f over the grid, then polishes the best node with Brent's method
// on the bracketing cell pair.
template <class F>
std::pair<double, double> grid_minimum(F&& f, int n_grid) {
  const double h = kTwoPi / n_grid;
  int best = 0;
  double best_val = f(0.0);
  for (int j = 1; j < n_grid; ++j) {
    const double val = f(j * h);
    if (val < best_val) {
      best_val = val;
      best = j;
    }
  }
  const double center = best * h;
  const auto [u, val] =
      boost::math::tools::brent_find_minima(f, center - h, center + h, 50);
  if (val < best_val) return {wrap_angle(u), val};
  return {center, best_val};
}

}  // namespace

int period_divisor(const PeriodicCurve& curve) {
  int g = 0;
  for (int k = 1; k <= curve.degree(); ++k) {
    if (curve.alpha_cos()[k] != 0.0 || curve.alpha_sin()[k] != 0.0 ||
        curve.beta_cos()[k] != 0.0 || curve.beta_sin()[k] != 0.0) {
      g = std::gcd(g, k);
    }
  }
  return g == 0 ? 1 : g;
}

PeriodicCurve primitive(const PeriodicCurve& curve) {
  const int m = period_divisor(curve);
  if (m == 1) return curve;
  const int deg = curve.degree() / m;
  std::vector<double> ac(deg + 1), as(deg + 1), bc(deg + 1), bs(deg + 1);
  for (int k = 0; k <= deg; ++k) {
    ac[k] = curve.alpha_cos()[k * m];
    as[k] = k == 0 ? 0.0 : curve.alpha_sin()[k * m];
    bc[k] = curve.beta_cos()[k * m];
    bs[k] = k == 0 ? 0.0 : curve.beta_sin()[k * m];
  }
  return PeriodicCurve(ac, as, bc, bs);
}

CurveReport classify_curve(const PeriodicCurve& curve, int n_grid, double tol) {
  if (n_grid < 8 * (curve.degree() + 1)) {
    throw Error(ErrorKind::InvalidArgument,
                "classify_curve: n_grid must be at least 8*(degree+1) = " +
                    std::to_string(8 * (curve.degree() + 1)));
  }
  CurveReport report;
  report.tolerance = tol;

  auto speed = [&](double u) { return eval_curve(curve, u).speed(); };
  auto convexity = [&](double u) { return eval_curve(curve, u).convexity(); };
  auto neg_convexity = [&](double u) { return -eval_curve(curve, u).convexity(); };

  report.regularity_margin = grid_minimum(speed, n_grid).second;
  const auto [u_star, cmin] = grid_minimum(convexity, n_grid);
  report.convexity_margin = cmin;
  report.u_star = u_star;
  report.convexity_max = -grid_minimum(neg_convexity, n_grid).second;

  report.regular = report.regularity_margin > tol;
  report.strictly_convex = report.convexity_margin > tol;
  if (report.convexity_margin > tol) {
    report.orientation = Orientation::Negative;
  } else if (report.convexity_max < -tol) {
    report.orientation = Orientation::Positive;
  } else {
    report.orientation = Orientation::Indefinite;
  }

  report.period_divisor = period_divisor(curve);
  const auto pts = sample_curve(primitive(curve), kJordanSamples);
  report.embedded = !planar::closed_polyline_self_intersects(pts);
  return report;
}

double signed_curvature(const PeriodicCurve& curve, double u) {
  const auto c = eval_curve(curve, u);
  const double sp = c.speed();
  if (sp <= 1e-12) {
    throw Error(ErrorKind::DegenerateSpeed,
                "signed_curvature: degenerate speed at u = " + std::to_string(u));
  }
  return (c.d_alpha * c.dd_beta - c.dd_alpha * c.d_beta) / (sp * sp * sp);
}

PeriodicCurve reversed(const PeriodicCurve& curve) {
  auto as = curve.alpha_sin();
  auto bs = curve.beta_sin();
  for (auto& c : as) c = -c;
  for (auto& c : bs) c = -c;
  return PeriodicCurve(curve.alpha_cos(), as, curve.beta_cos(), bs);
}

PeriodicCurve oriented_negatively(const PeriodicCurve& curve, int n_grid) {
  if (n_grid <= 0) n_grid = std::max(256, 8 * (curve.degree() + 1));
  const auto report = classify_curve(curve, n_grid);
  if (report.orientation == Orientation::Positive && report.regular) return reversed(curve);
  return curve;
}

PeriodicCurve translated(const PeriodicCurve& curve, const Vec2& c) {
  auto ac = curve.alpha_cos();
  auto bc = curve.beta_cos();
  ac[0] += c[0];
  bc[0] += c[1];
  return PeriodicCurve(ac, curve.alpha_sin(), bc, curve.beta_sin());
}

PeriodicCurve shifted(const PeriodicCurve& curve, double shift) {
  auto ac = curve.alpha_cos();
  auto as = curve.alpha_sin();
  auto bc = curve.beta_cos();
  auto bs = curve.beta_sin();
  // cos(k(u+s)) = cos(ks)cos(ku) − sin(ks)sin(ku); sin(k(u+s)) = sin(ks)cos(ku) + cos(ks)sin(ku)
  for (int k = 1; k <= curve.degree(); ++k) {
    const double c = std::cos(k * shift);
    const double s = std::sin(k * shift);
    const double a0 = ac[k], a1 = as[k], b0 = bc[k], b1 = bs[k];
    ac[k] = a0 * c + a1 * s;
    as[k] = -a0 * s + a1 * c;
    bc[k] = b0 * c + b1 * s;
    bs[k] = -b0 * s + b1 * c;
  }
  return PeriodicCurve(ac, as, bc, bs);
}

std::vector<Vec2> sample_curve(const PeriodicCurve& curve, int n) {
  std::vector<Vec2> pts(n);
  for (int j = 0; j < n; ++j) pts[j] = eval_curve(curve, kTwoPi * j / n).point();
  return pts;
}

PeriodicCurve fit_curve(const std::vector<Vec2>& samples, int degree) {
  const int n = static_cast<int>(samples.size());
  if (degree < 0 || n <= 2 * degree) {
    throw Error(ErrorKind::InvalidArgument, "fit_curve: need more than 2*degree samples");
  }
  std::vector<double> ac(degree + 1, 0.0), as(degree + 1, 0.0), bc(degree + 1, 0.0),
      bs(degree + 1, 0.0);
  for (int k = 0; k <= degree; ++k) {
    const double w = (k == 0 ? 1.0 : 2.0) / n;
    for (int j = 0; j < n; ++j) {
      const double u = kTwoPi * j / n;
      const double c = std::cos(k * u);
      const double s = std::sin(k * u);
      ac[k] += w * samples[j][0] * c;
      bc[k] += w * samples[j][1] * c;
      if (k > 0) {
        as[k] += w * samples[j][0] * s;
        bs[k] += w * samples[j][1] * s;
      }
    }
  }
  return PeriodicCurve(ac, as, bc, bs);
}

PeriodicCurve builtin_curve(std::string_view name) {
  if (name == "circle") return PeriodicCurve({0, 1}, {0, 0}, {0, 0}, {0, -1});
  if (name == "ellipse") return PeriodicCurve({0, 0.8}, {0, 0}, {0, 0}, {0, -0.6});
  if (name == "remark42") {
    // (1/8)(4 sin u, 4 cos u + 4 sin u − cos 2u): single traversal per period.
    return PeriodicCurve({0, 0, 0}, {0, 0.5, 0}, {0, 0.5, -0.125}, {0, 0.5, 0});
  }
  if (name == "remark42-double") {
    // (1/8)(4 sin 2u, 4 cos 2u + 4 sin 2u − cos 4u): π-periodic, double cover.
    return PeriodicCurve({0, 0, 0, 0, 0}, {0, 0, 0.5, 0, 0}, {0, 0, 0.5, 0, -0.125},
                         {0, 0, 0.5, 0, 0});
  }
  if (name == "limacon") {
    // Reversed limaçon r = 1/2 + cos θ: strictly convex, rotation index 2.
    return PeriodicCurve({0.5, 0.5, 0.5}, {0, 0, 0}, {0, 0, 0}, {0, -0.5, -0.5});
  }
  if (name == "bean") {
    // Regular closed curve with inflections.
    return PeriodicCurve({0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, -1, 0, 0.35});
  }
  throw Error(ErrorKind::UnknownName, "unknown builtin curve '" + std::string(name) + "'");
}

std::vector<std::string> builtin_curve_names() {
  return {"circle", "ellipse", "remark42", "remark42-double", "limacon", "bean"};
}

}  // namespace masing
