#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "masing/expr.hpp"
#include "masing/state.hpp"

namespace masing {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const { return lo <= v && v <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Closed box in (x, y, z, p, q): the checkable stand-in for the open set
/// on which the coefficients are analytic.
struct Box {
  std::array<Interval, 5> bounds{};

  bool contains(const State5& s) const { return !violation(s).has_value(); }
  /// Describes the first violated bound, e.g. "p = 4.5 > 4".
  std::optional<std::string> violation(const State5& s) const;
  /// The slice at x = y = z = 0 contains (p, q).
  bool slice_contains(double p, double q) const;

  friend bool operator==(const Box&, const Box&) = default;
};

struct FieldValues {
  double A = 0.0, B = 0.0, C = 0.0, E = 0.0;
  double D = 0.0;  ///< ellipticity A·C − B² + E
};

/// Coefficients of A z_xx + 2B z_xy + C z_yy + z_xx z_yy − z_xy² = E.
struct CoefficientField {
  Expr A, B, C, E;
  Box box;
  std::string name;

  bool is_pure() const { return A.is_literal(0.0) && B.is_literal(0.0) && C.is_literal(0.0); }
};

/// Evaluates the coefficients at s. Throws Error(OutOfBox) naming the violated
/// bound, Error(NonFinite) on a non-finite coefficient, Error(Ellipticity) when D <= 0.
FieldValues eval_field(const CoefficientField& field, const State5& s);

/// det D²z = E with the given box.
CoefficientField pure_field(Expr E, Box box, std::string name = "pure");

/// |x|,|y|,|z| <= 1, |p|,|q| <= 4.
Box default_box();

/// "pure-one": A=B=C=0, E=1. "remark42": A=C=0, B=p², E=1+p⁴ (D ≡ 1).
CoefficientField builtin_field(std::string_view name);
std::vector<std::string> builtin_field_names();

}  // namespace masing
