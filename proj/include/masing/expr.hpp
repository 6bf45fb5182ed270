#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "masing/state.hpp"

namespace masing {

enum class Var { X, Y, Z, P, Q };
enum class UnaryOp { Neg };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Func { Sin, Cos, Exp, Log, Sqrt, Sinh, Cosh, Atan };

std::string_view to_string(Var v);
std::string_view to_string(Func f);

/// Immutable expression tree over the variables {x, y, z, p, q}.
///
/// Grammar (whitespace insignificant):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := '-' unary | power
///     power   := primary ('^' unary)?        right-associative, binds tightest
///     primary := number | var | func '(' expr ')' | '(' expr ')'
///
/// so "-2^2" is −4 and "2^3^2" is 512.
class Expr {
 public:
  struct Node;

  Expr();  ///< the literal 0

  static Expr literal(double value);
  static Expr variable(Var v);
  static Expr unary(UnaryOp op, Expr operand);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr call(Func f, Expr arg);

  double eval(const State5& s) const;

  /// Fully parenthesized text; parse_expr(e.to_string()) == e.
  std::string to_string() const;

  std::set<Var> variables() const;
  bool is_literal(double value) const;

  const Node& node() const { return *node_; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Expr::Node {
  struct Literal {
    double value;
  };
  struct Variable {
    Var var;
  };
  struct Unary {
    UnaryOp op;
    Expr operand;
  };
  struct Binary {
    BinaryOp op;
    Expr lhs, rhs;
  };
  struct Call {
    Func func;
    Expr arg;
  };
  std::variant<Literal, Variable, Unary, Binary, Call> data;
};

/// Throws ParseError (kind Parse or UnknownIdentifier) carrying the position.
Expr parse_expr(std::string_view text);

inline Expr operator+(Expr a, Expr b) { return Expr::binary(BinaryOp::Add, std::move(a), std::move(b)); }
inline Expr operator-(Expr a, Expr b) { return Expr::binary(BinaryOp::Sub, std::move(a), std::move(b)); }
inline Expr operator*(Expr a, Expr b) { return Expr::binary(BinaryOp::Mul, std::move(a), std::move(b)); }
inline Expr operator/(Expr a, Expr b) { return Expr::binary(BinaryOp::Div, std::move(a), std::move(b)); }
inline Expr pow(Expr a, Expr b) { return Expr::binary(BinaryOp::Pow, std::move(a), std::move(b)); }
inline Expr operator-(Expr a) { return Expr::unary(UnaryOp::Neg, std::move(a)); }

}  // namespace masing
