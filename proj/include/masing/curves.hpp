#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "masing/state.hpp"

namespace masing {

/// A 2π-periodic plane curve γ(u) = (α(u), β(u)) stored as a truncated Fourier
/// series. Coefficient k multiplies cos(ku) / sin(ku); index 0 of the sin
/// arrays is kept for alignment and ignored.
class PeriodicCurve {
 public:
  PeriodicCurve() = default;
  /// Throws Error(InvalidArgument) unless all four arrays have the same non-zero length.
  PeriodicCurve(std::vector<double> alpha_cos, std::vector<double> alpha_sin,
                std::vector<double> beta_cos, std::vector<double> beta_sin);

  int degree() const { return static_cast<int>(alpha_cos_.size()) - 1; }

  const std::vector<double>& alpha_cos() const { return alpha_cos_; }
  const std::vector<double>& alpha_sin() const { return alpha_sin_; }
  const std::vector<double>& beta_cos() const { return beta_cos_; }
  const std::vector<double>& beta_sin() const { return beta_sin_; }

  friend bool operator==(const PeriodicCurve&, const PeriodicCurve&) = default;

 private:
  std::vector<double> alpha_cos_{0.0};
  std::vector<double> alpha_sin_{0.0};
  std::vector<double> beta_cos_{0.0};
  std::vector<double> beta_sin_{0.0};
};

/// γ and its first two derivatives at one parameter value.
struct CurvePoint {
  double alpha = 0.0, beta = 0.0;
  double d_alpha = 0.0, d_beta = 0.0;
  double dd_alpha = 0.0, dd_beta = 0.0;

  Vec2 point() const { return {alpha, beta}; }
  /// α''β' − α'β''; positive for strictly convex, negatively oriented curves.
  double convexity() const { return dd_alpha * d_beta - d_alpha * dd_beta; }
  double speed() const;
};

CurvePoint eval_curve(const PeriodicCurve& curve, double u);

enum class Orientation { Negative, Positive, Indefinite };
std::string_view to_string(Orientation o);

struct CurveReport {
  double regularity_margin = 0.0;  ///< min ‖γ'(u)‖
  double convexity_margin = 0.0;   ///< min (α''β' − α'β'')
  double convexity_max = 0.0;      ///< max (α''β' − α'β'')
  double u_star = 0.0;             ///< location of the convexity minimum, in [0, 2π)
  Orientation orientation = Orientation::Indefinite;
  bool regular = false;
  bool strictly_convex = false;    ///< strictly convex and negatively oriented
  bool embedded = false;           ///< image is a Jordan curve (one primitive period tested)
  int period_divisor = 1;          ///< γ has period 2π / period_divisor
  double tolerance = 0.0;

  bool jordan() const { return regular && embedded && period_divisor == 1; }
};

inline constexpr double kDefaultCurveTolerance = 1e-9;
inline constexpr int kJordanSamples = 2048;

/// Scans margins on n_grid nodes, refines the extrema by 1-D minimization and
/// runs the Jordan test on a kJordanSamples-point polyline.
/// Throws Error(InvalidArgument) when n_grid < 8·(degree + 1).
CurveReport classify_curve(const PeriodicCurve& curve, int n_grid,
                           double tol = kDefaultCurveTolerance);

/// Standard signed curvature (α'β'' − α''β') / ‖γ'‖³. Throws
/// Error(DegenerateSpeed) when ‖γ'(u)‖ <= 1e-12.
double signed_curvature(const PeriodicCurve& curve, double u);

/// u ↦ γ(−u).
PeriodicCurve reversed(const PeriodicCurve& curve);

/// Reverses a positively oriented strictly convex curve so it meets the
/// negative-orientation convention; returns other curves unchanged.
PeriodicCurve oriented_negatively(const PeriodicCurve& curve, int n_grid = 0);

/// Largest m such that only harmonics divisible by m are present.
int period_divisor(const PeriodicCurve& curve);

/// u ↦ γ(u / m) with m = period_divisor(curve): one traversal per 2π.
PeriodicCurve primitive(const PeriodicCurve& curve);

/// γ + c.
PeriodicCurve translated(const PeriodicCurve& curve, const Vec2& c);

/// u ↦ γ(u + shift).
PeriodicCurve shifted(const PeriodicCurve& curve, double shift);

/// n samples at u_j = 2πj/n.
std::vector<Vec2> sample_curve(const PeriodicCurve& curve, int n);

/// Least-squares trigonometric fit (exact DFT truncation) of uniformly spaced
/// samples u_j = 2πj/n. Requires n > 2·degree.
PeriodicCurve fit_curve(const std::vector<Vec2>& samples, int degree);

/// Names: circle, ellipse, remark42, remark42-double, limacon, bean.
PeriodicCurve builtin_curve(std::string_view name);
std::vector<std::string> builtin_curve_names();

}  // namespace masing
