#pragma once

// Closed-form coordinate expressions.
//
// Grammar (whitespace-insensitive):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)?
//   exponent:= '-'? INTEGER ('^' exponent)?
//   primary := NUMBER | COORD | FUNC '(' expr ')' | '(' expr ')'
//
// FUNC is one of sin cos sinh cosh tanh exp log sqrt. Exponents are integer
// literals; a chained exponent x^2^3 folds to x^8 at parse time.

#include <array>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "ctgeo/errors.hpp"
#include "ctgeo/jet.hpp"

namespace ctgeo {

using CoordNames = std::array<std::string, 3>;

inline const CoordNames kDefaultCoords = {"x", "y", "t"};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset,
             std::set<std::string> expected)
      : Error(message), offset_(offset), expected_(std::move(expected)) {}
  std::size_t offset() const { return offset_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::set<std::string> expected_;
};

class UnknownIdentifierError : public ParseError {
 public:
  UnknownIdentifierError(const std::string& symbol, std::size_t offset)
      : ParseError("unknown identifier '" + symbol + "' at offset " +
                       std::to_string(offset),
                   offset, {}),
        symbol_(symbol) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

enum class Function { kSin, kCos, kSinh, kCosh, kTanh, kExp, kLog, kSqrt };

std::string_view function_name(Function f);

class Expr {
 public:
  enum class Kind { kNumber, kVariable, kNegate, kAdd, kSub, kMul, kDiv, kPow, kCall };

  struct Node {
    Kind kind;
    double number = 0.0;
    int variable = 0;
    int exponent = 0;
    Function function = Function::kExp;
    std::shared_ptr<const Node> lhs{};
    std::shared_ptr<const Node> rhs{};
    std::size_t begin = 0;
    std::size_t end = 0;
  };

  Expr(std::shared_ptr<const Node> root, std::string source, CoordNames coords)
      : root_(std::move(root)),
        source_(std::move(source)),
        coords_(std::move(coords)) {}

  const Node& root() const { return *root_; }
  const std::string& source() const { return source_; }
  const CoordNames& coords() const { return coords_; }

  /// Canonical text with minimal parentheses; reparses to the same tree.
  std::string to_string() const;
  /// Debug form, e.g. Div(Pow(Call(cosh,t),2),Pow(y,2)).
  std::string to_sexpr() const;

  template <typename S>
  S evaluate(const std::array<S, 3>& coords) const {
    return eval(*root_, coords);
  }

 private:
  template <typename S>
  S eval(const Node& n, const std::array<S, 3>& c) const;

  [[noreturn]] void rethrow(const DomainError& e, const Node& n) const {
    throw e.with_context("in '" + source_.substr(n.begin, n.end - n.begin) +
                         "' at offset " + std::to_string(n.begin));
  }

  std::shared_ptr<const Node> root_;
  std::string source_;
  CoordNames coords_;
};

Expr parse(std::string_view source, const CoordNames& coords = kDefaultCoords);

/// Value and partials of e at a chart point, to the given jet order.
Jet3 eval_jet(const Expr& e, const std::array<double, 3>& at, int order);

template <typename S>
S apply_function(Function f, const S& a) {
  using std::cos;
  using std::cosh;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  using std::tanh;
  switch (f) {
    case Function::kSin: return sin(a);
    case Function::kCos: return cos(a);
    case Function::kSinh: return sinh(a);
    case Function::kCosh: return cosh(a);
    case Function::kTanh: return tanh(a);
    case Function::kExp: return exp(a);
    case Function::kLog: {
      if constexpr (std::is_same_v<S, double>) {
        if (!(a > 0.0)) throw DomainError("log", a);
      }
      return log(a);
    }
    case Function::kSqrt: {
      if constexpr (std::is_same_v<S, double>) {
        if (a < 0.0) throw DomainError("sqrt", a);
      }
      return sqrt(a);
    }
  }
  throw ArgumentError("unknown function");
}

template <typename S>
S Expr::eval(const Node& n, const std::array<S, 3>& c) const {
  switch (n.kind) {
    case Kind::kNumber: return S(n.number);
    case Kind::kVariable: return c[n.variable];
    case Kind::kNegate: return -eval(*n.lhs, c);
    case Kind::kAdd: return eval(*n.lhs, c) + eval(*n.rhs, c);
    case Kind::kSub: return eval(*n.lhs, c) - eval(*n.rhs, c);
    case Kind::kMul: return eval(*n.lhs, c) * eval(*n.rhs, c);
    case Kind::kDiv: {
      const S a = eval(*n.lhs, c);
      const S b = eval(*n.rhs, c);
      if constexpr (std::is_same_v<S, double>) {
        if (b == 0.0) rethrow(DomainError("div", 0.0), n);
        return a / b;
      } else {
        try {
          return a / b;
        } catch (const DomainError& e) {
          rethrow(e, n);
        }
      }
    }
    case Kind::kPow: {
      const S a = eval(*n.lhs, c);
      try {
        return pow(a, n.exponent);
      } catch (const DomainError& e) {
        rethrow(e, n);
      }
    }
    case Kind::kCall: {
      const S a = eval(*n.lhs, c);
      try {
        return apply_function(n.function, a);
      } catch (const DomainError& e) {
        rethrow(e, n);
      }
    }
  }
  throw ArgumentError("corrupt expression node");
}

}  // namespace ctgeo
