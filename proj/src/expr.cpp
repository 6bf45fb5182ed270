#include "masing/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "masing/error.hpp"

namespace masing {

std::string_view to_string(Var v) {
  switch (v) {
    case Var::X: return "x";
    case Var::Y: return "y";
    case Var::Z: return "z";
    case Var::P: return "p";
    case Var::Q: return "q";
  }
  return "?";
}

std::string_view to_string(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    case Func::Sinh: return "sinh";
    case Func::Cosh: return "cosh";
    case Func::Atan: return "atan";
  }
  return "?";
}

Expr::Expr() : Expr(literal(0.0)) {}

Expr Expr::literal(double value) {
  return Expr(std::make_shared<const Node>(Node{Node::Literal{value}}));
}
Expr Expr::variable(Var v) { return Expr(std::make_shared<const Node>(Node{Node::Variable{v}})); }
Expr Expr::unary(UnaryOp op, Expr operand) {
  return Expr(std::make_shared<const Node>(Node{Node::Unary{op, std::move(operand)}}));
}
Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(
      std::make_shared<const Node>(Node{Node::Binary{op, std::move(lhs), std::move(rhs)}}));
}
Expr Expr::call(Func f, Expr arg) {
  return Expr(std::make_shared<const Node>(Node{Node::Call{f, std::move(arg)}}));
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double var_value(Var v, const State5& s) {
  switch (v) {
    case Var::X: return s.x;
    case Var::Y: return s.y;
    case Var::Z: return s.z;
    case Var::P: return s.p;
    case Var::Q: return s.q;
  }
  return 0.0;
}

double apply(Func f, double a) {
  switch (f) {
    case Func::Sin: return std::sin(a);
    case Func::Cos: return std::cos(a);
    case Func::Exp: return std::exp(a);
    case Func::Log: return std::log(a);
    case Func::Sqrt: return std::sqrt(a);
    case Func::Sinh: return std::sinh(a);
    case Func::Cosh: return std::cosh(a);
    case Func::Atan: return std::atan(a);
  }
  return 0.0;
}

double apply(BinaryOp op, double a, double b) {
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div: return a / b;
    case BinaryOp::Pow: return std::pow(a, b);
  }
  return 0.0;
}

char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    case BinaryOp::Pow: return '^';
  }
  return '?';
}

}  // namespace

double Expr::eval(const State5& s) const {
  return std::visit(
      overloaded{
          [](const Node::Literal& n) { return n.value; },
          [&](const Node::Variable& n) { return var_value(n.var, s); },
          [&](const Node::Unary& n) { return -n.operand.eval(s); },
          [&](const Node::Binary& n) { return apply(n.op, n.lhs.eval(s), n.rhs.eval(s)); },
          [&](const Node::Call& n) { return apply(n.func, n.arg.eval(s)); },
      },
      node_->data);
}

std::string Expr::to_string() const {
  return std::visit(
      overloaded{
          [](const Node::Literal& n) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            return std::string(buf);
          },
          [](const Node::Variable& n) { return std::string(masing::to_string(n.var)); },
          [](const Node::Unary& n) { return "(-" + n.operand.to_string() + ")"; },
          [](const Node::Binary& n) {
            return "(" + n.lhs.to_string() + " " + op_char(n.op) + " " + n.rhs.to_string() + ")";
          },
          [](const Node::Call& n) {
            return std::string(masing::to_string(n.func)) + "(" + n.arg.to_string() + ")";
          },
      },
      node_->data);
}

std::set<Var> Expr::variables() const {
  std::set<Var> out;
  std::visit(overloaded{
                 [](const Node::Literal&) {},
                 [&](const Node::Variable& n) { out.insert(n.var); },
                 [&](const Node::Unary& n) { out.merge(n.operand.variables()); },
                 [&](const Node::Binary& n) {
                   out.merge(n.lhs.variables());
                   out.merge(n.rhs.variables());
                 },
                 [&](const Node::Call& n) { out.merge(n.arg.variables()); },
             },
             node_->data);
  return out;
}

bool Expr::is_literal(double value) const {
  const auto* lit = std::get_if<Node::Literal>(&node_->data);
  return lit != nullptr && lit->value == value;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& da = a.node_->data;
  const auto& db = b.node_->data;
  if (da.index() != db.index()) return false;
  return std::visit(
      overloaded{
          [&](const Expr::Node::Literal& n) {
            return n.value == std::get<Expr::Node::Literal>(db).value;
          },
          [&](const Expr::Node::Variable& n) {
            return n.var == std::get<Expr::Node::Variable>(db).var;
          },
          [&](const Expr::Node::Unary& n) {
            const auto& m = std::get<Expr::Node::Unary>(db);
            return n.op == m.op && n.operand == m.operand;
          },
          [&](const Expr::Node::Binary& n) {
            const auto& m = std::get<Expr::Node::Binary>(db);
            return n.op == m.op && n.lhs == m.lhs && n.rhs == m.rhs;
          },
          [&](const Expr::Node::Call& n) {
            const auto& m = std::get<Expr::Node::Call>(db);
            return n.func == m.func && n.arg == m.arg;
          },
      },
      da);
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ErrorKind::Parse, "syntax error: " + msg, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(BinaryOp::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::binary(BinaryOp::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(BinaryOp::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(BinaryOp::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::unary(UnaryOp::Neg, parse_unary());
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) return Expr::binary(BinaryOp::Pow, base, parse_unary());
    return base;
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits();
      } else {
        pos_ = save;
      }
    }
    double value = 0.0;
    const auto* first = text_.data() + start;
    const auto* last = text_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr::literal(value);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    static constexpr std::pair<std::string_view, Var> kVars[] = {
        {"x", Var::X}, {"y", Var::Y}, {"z", Var::Z}, {"p", Var::P}, {"q", Var::Q}};
    for (const auto& [n, v] : kVars) {
      if (name == n) return Expr::variable(v);
    }
    static constexpr std::pair<std::string_view, Func> kFuncs[] = {
        {"sin", Func::Sin},   {"cos", Func::Cos},   {"exp", Func::Exp},   {"log", Func::Log},
        {"sqrt", Func::Sqrt}, {"sinh", Func::Sinh}, {"cosh", Func::Cosh}, {"atan", Func::Atan}};
    for (const auto& [n, f] : kFuncs) {
      if (name == n) {
        if (!accept('(')) fail("expected '(' after " + std::string(name));
        Expr arg = parse_expr();
        if (!accept(')')) fail("expected ')'");
        return Expr::call(f, arg);
      }
    }
    throw ParseError(ErrorKind::UnknownIdentifier,
                     "unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace masing
