#include "ctgeo/expr.hpp"

#include <cctype>
#include <charconv>
#include <optional>

namespace ctgeo {

namespace {

constexpr std::array<std::pair<std::string_view, Function>, 8> kFunctions = {{
    {"sin", Function::kSin},
    {"cos", Function::kCos},
    {"sinh", Function::kSinh},
    {"cosh", Function::kCosh},
    {"tanh", Function::kTanh},
    {"exp", Function::kExp},
    {"log", Function::kLog},
    {"sqrt", Function::kSqrt},
}};

std::optional<Function> lookup_function(std::string_view name) {
  for (const auto& [n, f] : kFunctions)
    if (n == name) return f;
  return std::nullopt;
}

enum class Tok { kNumber, kIdent, kPlus, kMinus, kStar, kSlash, kCaret, kLParen, kRParen, kEnd };

struct Token {
  Tok kind;
  std::size_t begin;
  std::size_t end;
  std::string_view text;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::kEnd) return "end of input";
  return "'" + std::string(t.text) + "'";
}

class Parser {
 public:
  Parser(std::string_view src, const CoordNames& coords)
      : src_(src), coords_(coords) {
    advance();
  }

  std::shared_ptr<const Expr::Node> parse_all() {
    if (tok_.kind == Tok::kEnd) {
      throw ParseError("syntax error at offset 0: empty expression", 0,
                       prefix_set());
    }
    auto root = parse_expr(0);
    if (tok_.kind != Tok::kEnd) {
      fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
    }
    return root;
  }

 private:
  using NodePtr = std::shared_ptr<const Expr::Node>;

  static constexpr int kAddBp = 1;
  static constexpr int kMulBp = 3;
  static constexpr int kUnaryBp = 5;
  static constexpr int kPowBp = 7;

  static std::set<std::string> prefix_set() {
    return {"number", "identifier", "'('", "'-'"};
  }

  [[noreturn]] void fail(std::set<std::string> expected) const {
    std::string msg = "syntax error at offset " + std::to_string(tok_.begin) +
                      ": found " + describe(tok_) + ", expected one of {";
    bool first = true;
    for (const auto& e : expected) {
      msg += (first ? "" : ", ") + e;
      first = false;
    }
    msg += "}";
    throw ParseError(msg, tok_.begin, std::move(expected));
  }

  void advance() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    const std::size_t b = pos_;
    if (pos_ >= src_.size()) {
      tok_ = {Tok::kEnd, b, b, {}};
      return;
    }
    const char ch = src_[pos_];
    auto single = [&](Tok k) {
      ++pos_;
      tok_ = {k, b, pos_, src_.substr(b, 1)};
    };
    switch (ch) {
      case '+': return single(Tok::kPlus);
      case '-': return single(Tok::kMinus);
      case '*': return single(Tok::kStar);
      case '/': return single(Tok::kSlash);
      case '^': return single(Tok::kCaret);
      case '(': return single(Tok::kLParen);
      case ')': return single(Tok::kRParen);
      default: break;
    }
    auto is_digit = [&](std::size_t i) {
      return i < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[i]));
    };
    if (is_digit(pos_) || (ch == '.' && is_digit(pos_ + 1))) {
      while (is_digit(pos_)) ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '.') {
        ++pos_;
        while (is_digit(pos_)) ++pos_;
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t q = pos_ + 1;
        if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
        if (is_digit(q)) {
          pos_ = q;
          while (is_digit(pos_)) ++pos_;
        }
      }
      tok_ = {Tok::kNumber, b, pos_, src_.substr(b, pos_ - b)};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        ++pos_;
      tok_ = {Tok::kIdent, b, pos_, src_.substr(b, pos_ - b)};
      return;
    }
    throw ParseError("syntax error at offset " + std::to_string(b) +
                         ": unexpected character '" + std::string(1, ch) + "'",
                     b, prefix_set());
  }

  NodePtr make(Expr::Node n) { return std::make_shared<const Expr::Node>(n); }

  NodePtr parse_expr(int min_bp) {
    NodePtr lhs = parse_prefix();
    for (;;) {
      int bp;
      Expr::Kind kind;
      switch (tok_.kind) {
        case Tok::kPlus: bp = kAddBp; kind = Expr::Kind::kAdd; break;
        case Tok::kMinus: bp = kAddBp; kind = Expr::Kind::kSub; break;
        case Tok::kStar: bp = kMulBp; kind = Expr::Kind::kMul; break;
        case Tok::kSlash: bp = kMulBp; kind = Expr::Kind::kDiv; break;
        case Tok::kCaret: bp = kPowBp; kind = Expr::Kind::kPow; break;
        default: return lhs;
      }
      if (bp <= min_bp) return lhs;
      advance();
      Expr::Node n{kind};
      n.begin = lhs->begin;
      n.lhs = lhs;
      if (kind == Expr::Kind::kPow) {
        n.exponent = parse_exponent();
        n.end = last_end_;
      } else {
        n.rhs = parse_expr(bp);
        n.end = n.rhs->end;
      }
      lhs = make(n);
    }
  }

  int parse_exponent() {
    bool negative = false;
    if (tok_.kind == Tok::kMinus) {
      negative = true;
      advance();
    }
    if (tok_.kind != Tok::kNumber ||
        tok_.text.find_first_not_of("0123456789") != std::string_view::npos) {
      fail({"integer literal"});
    }
    long value = 0;
    std::from_chars(tok_.text.data(), tok_.text.data() + tok_.text.size(),
                    value);
    last_end_ = tok_.end;
    advance();
    if (tok_.kind == Tok::kCaret) {
      advance();
      const int inner = parse_exponent();
      long folded = 1;
      for (int i = 0; i < std::abs(inner) && folded <= 1024; ++i) folded *= value;
      if (inner < 0) {
        if (value != 1) fail({"non-negative integer exponent"});
        folded = 1;
      }
      value = folded;
    }
    if (value > 1024) {
      throw ParseError("exponent too large at offset " +
                           std::to_string(last_end_),
                       last_end_, {"integer literal"});
    }
    return negative ? -static_cast<int>(value) : static_cast<int>(value);
  }

  NodePtr parse_prefix() {
    const Token t = tok_;
    switch (t.kind) {
      case Tok::kNumber: {
        Expr::Node n{Expr::Kind::kNumber};
        const auto res =
            std::from_chars(t.text.data(), t.text.data() + t.text.size(), n.number);
        if (res.ec != std::errc()) fail({"number"});
        n.begin = t.begin;
        n.end = t.end;
        last_end_ = t.end;
        advance();
        return make(n);
      }
      case Tok::kIdent: {
        advance();
        if (tok_.kind == Tok::kLParen) {
          const auto fn = lookup_function(t.text);
          if (!fn) throw UnknownIdentifierError(std::string(t.text), t.begin);
          advance();
          Expr::Node n{Expr::Kind::kCall};
          n.function = *fn;
          n.lhs = parse_expr(0);
          if (tok_.kind != Tok::kRParen) fail({"')'"});
          n.begin = t.begin;
          n.end = tok_.end;
          last_end_ = tok_.end;
          advance();
          return make(n);
        }
        for (int i = 0; i < 3; ++i) {
          if (coords_[i] == t.text) {
            Expr::Node n{Expr::Kind::kVariable};
            n.variable = i;
            n.begin = t.begin;
            n.end = t.end;
            last_end_ = t.end;
            return make(n);
          }
        }
        throw UnknownIdentifierError(std::string(t.text), t.begin);
      }
      case Tok::kLParen: {
        advance();
        auto inner = parse_expr(0);
        if (tok_.kind != Tok::kRParen) fail({"')'"});
        // Keep the parenthesised span so error context shows the parens.
        Expr::Node n = *inner;
        n.begin = t.begin;
        n.end = tok_.end;
        last_end_ = tok_.end;
        advance();
        return make(n);
      }
      case Tok::kMinus: {
        advance();
        Expr::Node n{Expr::Kind::kNegate};
        n.lhs = parse_expr(kUnaryBp);
        n.begin = t.begin;
        n.end = n.lhs->end;
        return make(n);
      }
      default: fail(prefix_set());
    }
  }

  std::string_view src_;
  const CoordNames& coords_;
  std::size_t pos_ = 0;
  std::size_t last_end_ = 0;
  Token tok_{};
};

int precedence(const Expr::Node& n) {
  switch (n.kind) {
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub: return 1;
    case Expr::Kind::kMul:
    case Expr::Kind::kDiv: return 2;
    case Expr::Kind::kNegate: return 3;
    case Expr::Kind::kPow: return 4;
    default: return 5;
  }
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void print(const Expr::Node& n, const CoordNames& coords, std::string& out);

void print_child(const Expr::Node& child, int min_prec, const CoordNames& coords,
                 std::string& out) {
  const bool paren = precedence(child) < min_prec;
  if (paren) out += '(';
  print(child, coords, out);
  if (paren) out += ')';
}

void print(const Expr::Node& n, const CoordNames& coords, std::string& out) {
  switch (n.kind) {
    case Expr::Kind::kNumber: out += format_number(n.number); return;
    case Expr::Kind::kVariable: out += coords[n.variable]; return;
    case Expr::Kind::kNegate:
      out += '-';
      print_child(*n.lhs, 4, coords, out);
      return;
    case Expr::Kind::kPow:
      print_child(*n.lhs, 5, coords, out);
      out += '^';
      out += std::to_string(n.exponent);
      return;
    case Expr::Kind::kCall:
      out += function_name(n.function);
      out += '(';
      print(*n.lhs, coords, out);
      out += ')';
      return;
    default: break;
  }
  const int p = precedence(n);
  print_child(*n.lhs, p, coords, out);
  switch (n.kind) {
    case Expr::Kind::kAdd: out += " + "; break;
    case Expr::Kind::kSub: out += " - "; break;
    case Expr::Kind::kMul: out += '*'; break;
    default: out += '/'; break;
  }
  print_child(*n.rhs, p + 1, coords, out);
}

void sexpr(const Expr::Node& n, const CoordNames& coords, std::string& out) {
  auto binary = [&](const char* name) {
    out += name;
    out += '(';
    sexpr(*n.lhs, coords, out);
    out += ',';
    sexpr(*n.rhs, coords, out);
    out += ')';
  };
  switch (n.kind) {
    case Expr::Kind::kNumber: out += format_number(n.number); return;
    case Expr::Kind::kVariable: out += coords[n.variable]; return;
    case Expr::Kind::kNegate:
      out += "Neg(";
      sexpr(*n.lhs, coords, out);
      out += ')';
      return;
    case Expr::Kind::kAdd: return binary("Add");
    case Expr::Kind::kSub: return binary("Sub");
    case Expr::Kind::kMul: return binary("Mul");
    case Expr::Kind::kDiv: return binary("Div");
    case Expr::Kind::kPow:
      out += "Pow(";
      sexpr(*n.lhs, coords, out);
      out += ',' + std::to_string(n.exponent) + ')';
      return;
    case Expr::Kind::kCall:
      out += "Call(";
      out += function_name(n.function);
      out += ',';
      sexpr(*n.lhs, coords, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string_view function_name(Function f) {
  for (const auto& [n, fn] : kFunctions)
    if (fn == f) return n;
  return "?";
}

std::string Expr::to_string() const {
  std::string out;
  print(*root_, coords_, out);
  return out;
}

std::string Expr::to_sexpr() const {
  std::string out;
  sexpr(*root_, coords_, out);
  return out;
}

Expr parse(std::string_view source, const CoordNames& coords) {
  Parser p(source, coords);
  return Expr(p.parse_all(), std::string(source), coords);
}

Jet3 eval_jet(const Expr& e, const std::array<double, 3>& at, int order) {
  return e.evaluate(seed_coordinates(at, order));
}

}  // namespace ctgeo
