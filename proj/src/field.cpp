#include "masing/field.hpp"

#include <cmath>
#include <cstdio>

#include "masing/error.hpp"

namespace masing {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::optional<std::string> Box::violation(const State5& s) const {
  const std::array<double, 5> vals = {s.x, s.y, s.z, s.p, s.q};
  for (int i = 0; i < 5; ++i) {
    const auto& b = bounds[i];
    if (vals[i] < b.lo) {
      return std::string(kComponentNames[i]) + " = " + fmt(vals[i]) + " < " + fmt(b.lo);
    }
    if (vals[i] > b.hi) {
      return std::string(kComponentNames[i]) + " = " + fmt(vals[i]) + " > " + fmt(b.hi);
    }
    if (std::isnan(vals[i])) return std::string(kComponentNames[i]) + " is NaN";
  }
  return std::nullopt;
}

bool Box::slice_contains(double p, double q) const {
  return bounds[kX].contains(0.0) && bounds[kY].contains(0.0) && bounds[kZ].contains(0.0) &&
         bounds[kP].contains(p) && bounds[kQ].contains(q);
}

FieldValues eval_field(const CoefficientField& field, const State5& s) {
  if (auto v = field.box.violation(s)) {
    throw Error(ErrorKind::OutOfBox, "state outside the field box: " + *v);
  }
  FieldValues out;
  out.A = field.A.eval(s);
  out.B = field.B.eval(s);
  out.C = field.C.eval(s);
  out.E = field.E.eval(s);
  out.D = out.A * out.C - out.B * out.B + out.E;
  if (!std::isfinite(out.A) || !std::isfinite(out.B) || !std::isfinite(out.C) ||
      !std::isfinite(out.E) || !std::isfinite(out.D)) {
    throw Error(ErrorKind::NonFinite, "non-finite coefficient evaluation in field '" +
                                          field.name + "'");
  }
  if (!(out.D > 0.0)) {
    throw Error(ErrorKind::Ellipticity,
                "ellipticity violated in field '" + field.name + "': D = " + fmt(out.D));
  }
  return out;
}

CoefficientField pure_field(Expr E, Box box, std::string name) {
  return CoefficientField{Expr::literal(0.0), Expr::literal(0.0), Expr::literal(0.0),
                          std::move(E), box, std::move(name)};
}

Box default_box() {
  Box b;
  b.bounds = {Interval{-1, 1}, Interval{-1, 1}, Interval{-1, 1}, Interval{-4, 4},
              Interval{-4, 4}};
  return b;
}

CoefficientField builtin_field(std::string_view name) {
  if (name == "pure-one") return pure_field(Expr::literal(1.0), default_box(), "pure-one");
  if (name == "remark42") {
    return CoefficientField{parse_expr("0"), parse_expr("p^2"), parse_expr("0"),
                            parse_expr("1 + p^4"), default_box(), "remark42"};
  }
  throw Error(ErrorKind::UnknownName, "unknown builtin field '" + std::string(name) + "'");
}

std::vector<std::string> builtin_field_names() { return {"pure-one", "remark42"}; }

}  // namespace masing
