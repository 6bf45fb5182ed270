#include "masing/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "masing/error.hpp"
#include "masing/spectral.hpp"

namespace masing {

namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double sign_of(SphereConvention conv) { return conv == SphereConvention::Gnomonic ? 1.0 : -1.0; }

}  // namespace

void SphereBasis::validate() const {
  constexpr double tol = 1e-12;
  const bool ok = std::abs(dot(e1, e1) - 1.0) <= tol && std::abs(dot(e2, e2) - 1.0) <= tol &&
                  std::abs(dot(v0, v0) - 1.0) <= tol && std::abs(dot(e1, e2)) <= tol &&
                  std::abs(dot(e1, v0)) <= tol && std::abs(dot(e2, v0)) <= tol;
  const Vec3 c = cross(e1, e2);
  if (!ok || std::abs(c[0] - v0[0]) + std::abs(c[1] - v0[1]) + std::abs(c[2] - v0[2]) > 3 * tol) {
    throw Error(ErrorKind::InvalidArgument,
                "sphere basis must be orthonormal with e1 x e2 = v0");
  }
}

std::vector<Vec2> sphere_plane(const SphereCurve& curve, SphereConvention conv) {
  curve.basis.validate();
  const double sgn = sign_of(conv);
  std::vector<Vec2> out;
  out.reserve(curve.samples.size());
  for (std::size_t j = 0; j < curve.samples.size(); ++j) {
    const Vec3& s = curve.samples[j];
    if (std::abs(dot(s, s) - 1.0) > 1e-12) {
      throw Error(ErrorKind::InvalidArgument,
                  "sphere_plane: sample " + std::to_string(j) + " is not a unit vector");
    }
    const double h = dot(s, curve.basis.v0);
    if (!(h > 0.0)) {
      throw Error(ErrorKind::Hemisphere, "sphere_plane: sample " + std::to_string(j) +
                                             " violates <sigma, v0> > 0 (value " +
                                             std::to_string(h) + ")");
    }
    out.push_back({sgn * dot(s, curve.basis.e1) / h, sgn * dot(s, curve.basis.e2) / h});
  }
  return out;
}

SphereCurve plane_sphere(std::span<const Vec2> points, SphereConvention conv,
                         const SphereBasis& basis) {
  basis.validate();
  const double sgn = sign_of(conv);
  SphereCurve out;
  out.basis = basis;
  out.samples.reserve(points.size());
  for (const auto& g : points) {
    Vec3 s;
    for (int c = 0; c < 3; ++c) {
      s[c] = sgn * g[0] * basis.e1[c] + sgn * g[1] * basis.e2[c] + basis.v0[c];
    }
    const double len = std::sqrt(1.0 + g[0] * g[0] + g[1] * g[1]);
    for (auto& x : s) x /= len;
    out.samples.push_back(s);
  }
  return out;
}

SphereCurve plane_sphere(const PeriodicCurve& curve, int n, SphereConvention conv,
                         const SphereBasis& basis) {
  const auto pts = sample_curve(curve, n);
  return plane_sphere(pts, conv, basis);
}

SphereCurveReport classify_sphere_curve(const SphereCurve& curve, double tol) {
  const int n = static_cast<int>(curve.samples.size());
  if (n < 4 || n % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "classify_sphere_curve: need an even number (>= 4) of samples");
  }
  Spectral sp(n);
  std::array<std::vector<double>, 3> f, d1, d2;
  for (int c = 0; c < 3; ++c) {
    f[c].resize(n);
    d1[c].resize(n);
    d2[c].resize(n);
    for (int j = 0; j < n; ++j) f[c][j] = curve.samples[j][c];
    sp.derivative(f[c], d1[c]);
    sp.derivative(d1[c], d2[c]);
  }
  SphereCurveReport out;
  out.regularity_margin = std::numeric_limits<double>::infinity();
  out.convexity_margin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    const Vec3 s = curve.samples[j];
    const Vec3 s1 = {d1[0][j], d1[1][j], d1[2][j]};
    const Vec3 s2 = {d2[0][j], d2[1][j], d2[2][j]};
    const double speed = std::sqrt(dot(s1, s1));
    out.regularity_margin = std::min(out.regularity_margin, speed);
    const double det = dot(s, cross(s1, s2));
    const double kappa = speed > 0.0 ? -det / (speed * speed * speed) : 0.0;
    out.convexity_margin = std::min(out.convexity_margin, kappa);
  }
  out.regular = out.regularity_margin > tol;
  out.strictly_convex = out.regular && out.convexity_margin > tol;
  return out;
}

}  // namespace masing
