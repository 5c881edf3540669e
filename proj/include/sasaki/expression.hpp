#pragma once

/**
 * @file expression.hpp
 * @brief Arithmetic expressions for user-supplied metrics, immersions and fields.
 *
 * Grammar (lowest to highest precedence):
 *
 *   expr    := term (('+' | '-') term)*
 *   term    := unary (('*' | '/') unary)*
 *   unary   := '-' unary | power
 *   power   := primary ('^' unary)?          right-associative
 *   primary := number | name | name '(' expr ')' | '(' expr ')'
 *
 * Names are declared variables (bound at evaluation time) or named constants
 * (bound at parse time). Functions: sin cos tan exp log sqrt abs.
 * One AST walker evaluates over double and over dual numbers.
 */

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <numbers>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sasaki/dual.hpp"
#include "sasaki/errors.hpp"

namespace sasaki::expr {

struct SourcePos {
  int line = 1;
  int column = 1;
};

class ParseError : public Error {
 public:
  ParseError(SourcePos pos, const std::string& message, std::string expected = {})
      : Error(render(pos, message, expected)), pos_(pos), expected_(std::move(expected)) {}
  int line() const { return pos_.line; }
  int column() const { return pos_.column; }
  const std::string& expected() const { return expected_; }

 private:
  static std::string render(SourcePos pos, const std::string& message, const std::string& expected) {
    std::string s = "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " + message;
    if (!expected.empty()) s += " (expected " + expected + ")";
    return s;
  }
  SourcePos pos_;
  std::string expected_;
};

class EvalError : public Error {
 public:
  EvalError(SourcePos pos, const std::string& message)
      : Error("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " + message),
        pos_(pos) {}
  int line() const { return pos_.line; }
  int column() const { return pos_.column; }

 private:
  SourcePos pos_;
};

/// Variables (bound per evaluation, in this order) and named constants (bound at parse time).
struct Symbols {
  std::vector<std::string> variables;
  std::map<std::string, double> constants;

  /// x1..x9, u1..u9 and pi.
  static Symbols defaults() {
    Symbols s;
    for (const char* p : {"x", "u"})
      for (int i = 1; i <= 9; ++i) s.variables.push_back(p + std::to_string(i));
    s.constants["pi"] = std::numbers::pi;
    return s;
  }

  /// Variables named `prefix`1..`prefix`count.
  static std::vector<std::string> indexed(const std::string& prefix, int count) {
    std::vector<std::string> v;
    for (int i = 1; i <= count; ++i) v.push_back(prefix + std::to_string(i));
    return v;
  }

  int slot(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (variables[i] == name) return static_cast<int>(i);
    return -1;
  }
};

enum class Op { Number, Variable, Constant, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Func { Sin, Cos, Tan, Exp, Log, Sqrt, Abs };

inline const std::map<std::string, Func>& function_table() {
  static const std::map<std::string, Func> table{{"sin", Func::Sin},   {"cos", Func::Cos},   {"tan", Func::Tan},
                                                  {"exp", Func::Exp},   {"log", Func::Log},   {"sqrt", Func::Sqrt},
                                                  {"abs", Func::Abs}};
  return table;
}

struct Node {
  Op op = Op::Number;
  double value = 0.0;  // Number, Constant
  int slot = -1;       // Variable
  std::string name;    // Variable, Constant, Call
  Func fn = Func::Sin;
  std::shared_ptr<const Node> lhs, rhs;  // operands; Neg and Call use lhs
  SourcePos pos;
  bool constant = true;  // no variable anywhere below
};

using NodePtr = std::shared_ptr<const Node>;

namespace detail {

inline int precedence(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    default: return 5;
  }
}

inline std::string number_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // shortest text that still round-trips
  for (int p = 1; p < 17; ++p) {
    std::snprintf(buf, sizeof buf, "%.*g", p, v);
    if (std::strtod(buf, nullptr) == v) {
      s = buf;
      break;
    }
  }
  return s;
}

inline void print(const Node& n, std::string& out) {
  auto child = [&](const Node& c, bool parens) {
    if (parens) out += '(';
    print(c, out);
    if (parens) out += ')';
  };
  const int p = precedence(n.op);
  switch (n.op) {
    case Op::Number: out += number_text(n.value); break;
    case Op::Variable:
    case Op::Constant: out += n.name; break;
    case Op::Neg:
      out += '-';
      child(*n.lhs, precedence(n.lhs->op) < p);
      break;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      child(*n.lhs, precedence(n.lhs->op) < p);
      out += n.op == Op::Add ? " + " : n.op == Op::Sub ? " - " : n.op == Op::Mul ? " * " : " / ";
      child(*n.rhs, precedence(n.rhs->op) <= p);
      break;
    }
    case Op::Pow:
      child(*n.lhs, precedence(n.lhs->op) <= p);
      out += '^';
      child(*n.rhs, precedence(n.rhs->op) < precedence(Op::Neg));
      break;
    case Op::Call:
      out += n.name;
      out += '(';
      print(*n.lhs, out);
      out += ')';
      break;
  }
}

inline void collect(const Node& n, std::set<std::string>& names) {
  if (n.op == Op::Variable) names.insert(n.name);
  if (n.lhs) collect(*n.lhs, names);
  if (n.rhs) collect(*n.rhs, names);
}

template <class S>
S apply(Func f, const S& a) {
  using std::abs, std::cos, std::exp, std::log, std::sin, std::sqrt, std::tan;
  switch (f) {
    case Func::Sin: return sin(a);
    case Func::Cos: return cos(a);
    case Func::Tan: return tan(a);
    case Func::Exp: return exp(a);
    case Func::Log: return log(a);
    case Func::Sqrt: return sqrt(a);
    case Func::Abs: return abs(a);
  }
  return a;
}

template <class S>
S eval(const Node& n, std::span<const S> vars) {
  switch (n.op) {
    case Op::Number:
    case Op::Constant: return S(n.value);
    case Op::Variable: return vars[static_cast<std::size_t>(n.slot)];
    case Op::Neg: return -eval(*n.lhs, vars);
    case Op::Add: return eval(*n.lhs, vars) + eval(*n.rhs, vars);
    case Op::Sub: return eval(*n.lhs, vars) - eval(*n.rhs, vars);
    case Op::Mul: return eval(*n.lhs, vars) * eval(*n.rhs, vars);
    case Op::Div: {
      S num = eval(*n.lhs, vars);
      S den = eval(*n.rhs, vars);
      if (primal(den) == 0.0) throw EvalError(n.pos, "division by zero");
      return num / den;
    }
    case Op::Pow: {
      S base = eval(*n.lhs, vars);
      const double b = primal(base);
      if (n.rhs->constant) {
        const double p = primal(eval<double>(*n.rhs, {}));
        if (b < 0.0 && p != std::floor(p)) throw EvalError(n.pos, "negative base raised to a non-integer power");
        if (b == 0.0 && p < 0.0) throw EvalError(n.pos, "division by zero (zero raised to a negative power)");
        using std::pow;
        return pow(base, p);
      }
      if (!(b > 0.0)) throw EvalError(n.pos, "variable exponent requires a positive base");
      using std::exp, std::log;
      return exp(eval(*n.rhs, vars) * log(base));
    }
    case Op::Call: {
      S a = eval(*n.lhs, vars);
      const double v = primal(a);
      if (n.fn == Func::Log && !(v > 0.0)) throw EvalError(n.pos, "log of a non-positive value");
      if (n.fn == Func::Sqrt && v < 0.0) throw EvalError(n.pos, "sqrt of a negative value");
      return apply(n.fn, a);
    }
  }
  throw EvalError(n.pos, "corrupt expression node");
}

struct Token {
  enum Kind { Number, Name, Symbol, End } kind = End;
  std::string text;
  double value = 0.0;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.pos = pos_;
      if (i_ >= src_.size()) {
        t.kind = Token::End;
        out.push_back(t);
        return out;
      }
      char ch = src_[i_];
      if (std::isdigit(static_cast<unsigned char>(ch)) || (ch == '.' && i_ + 1 < src_.size() &&
                                                            std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
        t.kind = Token::Number;
        std::size_t start = i_;
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
        if (i_ < src_.size() && src_[i_] == '.') {
          advance();
          while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
        }
        if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
          std::size_t save = i_;
          SourcePos save_pos = pos_;
          advance();
          if (i_ < src_.size() && (src_[i_] == '+' || src_[i_] == '-')) advance();
          if (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) {
            while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
          } else {
            i_ = save;
            pos_ = save_pos;
          }
        }
        t.text = std::string(src_.substr(start, i_ - start));
        t.value = std::strtod(t.text.c_str(), nullptr);
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        t.kind = Token::Name;
        std::size_t start = i_;
        while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) advance();
        t.text = std::string(src_.substr(start, i_ - start));
      } else if (std::string_view("+-*/^(),").find(ch) != std::string_view::npos) {
        t.kind = Token::Symbol;
        t.text = std::string(1, ch);
        advance();
      } else {
        throw ParseError(pos_, std::string("unexpected character '") + ch + "'");
      }
      out.push_back(t);
    }
  }

 private:
  void advance() {
    if (src_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }
  void skip_space() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) advance();
  }

  std::string_view src_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const Symbols& syms) : toks_(std::move(toks)), syms_(syms) {}

  NodePtr parse_all() {
    NodePtr e = expr();
    if (peek().kind != Token::End)
      throw ParseError(peek().pos, "unexpected " + describe(peek()), "operator or end of input");
    return e;
  }

 private:
  static constexpr const char* kOperand = "number, identifier, '(' or '-'";

  const Token& peek() const { return toks_[k_]; }
  const Token& take() { return toks_[k_++]; }
  bool is_symbol(const char* s) const { return peek().kind == Token::Symbol && peek().text == s; }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::End: return "end of input";
      case Token::Number: return "number '" + t.text + "'";
      case Token::Name: return "identifier '" + t.text + "'";
      case Token::Symbol: return "'" + t.text + "'";
    }
    return "token";
  }

  static NodePtr binary(Op op, NodePtr l, NodePtr r, SourcePos pos) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->pos = pos;
    n->constant = l->constant && r->constant;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  NodePtr expr() {
    NodePtr l = term();
    while (is_symbol("+") || is_symbol("-")) {
      Token t = take();
      l = binary(t.text == "+" ? Op::Add : Op::Sub, l, term(), t.pos);
    }
    return l;
  }

  NodePtr term() {
    NodePtr l = unary();
    while (is_symbol("*") || is_symbol("/")) {
      Token t = take();
      l = binary(t.text == "*" ? Op::Mul : Op::Div, l, unary(), t.pos);
    }
    return l;
  }

  NodePtr unary() {
    if (is_symbol("-")) {
      Token t = take();
      auto n = std::make_shared<Node>();
      n->op = Op::Neg;
      n->pos = t.pos;
      n->lhs = unary();
      n->constant = n->lhs->constant;
      return n;
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (is_symbol("^")) {
      Token t = take();
      return binary(Op::Pow, base, unary(), t.pos);
    }
    return base;
  }

  NodePtr primary() {
    const Token& t = peek();
    if (t.kind == Token::Number) {
      take();
      auto n = std::make_shared<Node>();
      n->op = Op::Number;
      n->value = t.value;
      n->pos = t.pos;
      return n;
    }
    if (t.kind == Token::Name) {
      Token name = take();
      auto fit = function_table().find(name.text);
      if (is_symbol("(")) {
        if (fit == function_table().end()) throw ParseError(name.pos, "unknown function '" + name.text + "'");
        take();
        std::vector<NodePtr> args;
        if (!is_symbol(")")) {
          args.push_back(expr());
          while (is_symbol(",")) {
            take();
            args.push_back(expr());
          }
        }
        if (!is_symbol(")")) throw ParseError(peek().pos, "unexpected " + describe(peek()), "',' or ')'");
        take();
        if (args.size() != 1)
          throw ParseError(name.pos, "function '" + name.text + "' takes 1 argument, got " + std::to_string(args.size()));
        auto n = std::make_shared<Node>();
        n->op = Op::Call;
        n->fn = fit->second;
        n->name = name.text;
        n->pos = name.pos;
        n->lhs = args.front();
        n->constant = n->lhs->constant;
        return n;
      }
      if (fit != function_table().end())
        throw ParseError(peek().pos, "function '" + name.text + "' must be called", "'('");
      auto n = std::make_shared<Node>();
      n->name = name.text;
      n->pos = name.pos;
      if (int s = syms_.slot(name.text); s >= 0) {
        n->op = Op::Variable;
        n->slot = s;
        n->constant = false;
        return n;
      }
      if (auto c = syms_.constants.find(name.text); c != syms_.constants.end()) {
        n->op = Op::Constant;
        n->value = c->second;
        return n;
      }
      throw ParseError(name.pos, "unknown identifier '" + name.text + "'");
    }
    if (is_symbol("(")) {
      take();
      NodePtr e = expr();
      if (!is_symbol(")")) throw ParseError(peek().pos, "unexpected " + describe(peek()), "')'");
      take();
      return e;
    }
    throw ParseError(t.pos, "unexpected " + describe(t), kOperand);
  }

  std::vector<Token> toks_;
  const Symbols& syms_;
  std::size_t k_ = 0;
};

}  // namespace detail

/// Immutable parsed expression; cheap to copy.
class Expression {
 public:
  Expression() = default;
  Expression(NodePtr root, std::vector<std::string> variables)
      : root_(std::move(root)), variables_(std::move(variables)) {
    for (const auto& name : free_variables())
      for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i] == name) needed_ = std::max(needed_, i + 1);
  }

  const Node& root() const { return *root_; }
  const std::vector<std::string>& variables() const { return variables_; }

  template <class S>
  S evaluate(std::span<const S> bindings) const {
    if (bindings.size() < needed_)
      throw EvalError(root_->pos, "expected " + std::to_string(needed_) + " variable bindings, got " +
                                      std::to_string(bindings.size()));
    return detail::eval<S>(*root_, bindings);
  }
  double evaluate(const std::vector<double>& bindings) const {
    return evaluate<double>(std::span<const double>(bindings));
  }
  double evaluate(const std::map<std::string, double>& named) const {
    std::vector<double> b(variables_.size(), 0.0);
    auto used = free_variables();
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      auto it = named.find(variables_[i]);
      if (it != named.end()) {
        b[i] = it->second;
      } else if (used.count(variables_[i])) {
        throw EvalError(root_->pos, "variable '" + variables_[i] + "' is not bound");
      }
    }
    return evaluate(b);
  }

  std::set<std::string> free_variables() const {
    std::set<std::string> s;
    detail::collect(*root_, s);
    return s;
  }

  std::string to_string() const {
    std::string out;
    detail::print(*root_, out);
    return out;
  }

 private:
  NodePtr root_;
  std::vector<std::string> variables_;
  std::size_t needed_ = 0;  // bindings must cover the highest slot in use
};

inline Expression parse(std::string_view src, const Symbols& symbols = Symbols::defaults()) {
  detail::Lexer lex(src);
  detail::Parser p(lex.run(), symbols);
  return {p.parse_all(), symbols.variables};
}

struct ValueGradient {
  double value = 0.0;
  Eigen::VectorXd gradient;  // one entry per declared variable
};

/// Value and all first partial derivatives, one dual pass per variable.
inline ValueGradient eval_with_duals(const Expression& e, std::span<const double> bindings) {
  const std::size_t nv = std::min(e.variables().size(), bindings.size());
  ValueGradient out;
  out.gradient = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nv));
  std::vector<Dual1> x(nv);
  auto used = e.free_variables();
  out.value = e.evaluate<double>(bindings.subspan(0, nv));
  for (std::size_t i = 0; i < nv; ++i) {
    if (!used.count(e.variables()[i])) continue;
    for (std::size_t k = 0; k < nv; ++k) x[k] = Dual1(bindings[k], k == i ? 1.0 : 0.0);
    out.gradient[static_cast<Eigen::Index>(i)] = e.evaluate<Dual1>(std::span<const Dual1>(x)).d;
  }
  return out;
}

}  // namespace sasaki::expr
