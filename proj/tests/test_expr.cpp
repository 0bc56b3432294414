#include <doctest.h>

#include <random>

#include "ctgeo/expr.hpp"

using namespace ctgeo;

namespace {

// Closed forms used by the builtins and the warped-product pipeline, plus a
// spread of precedence and function cases.
const char* const kCorpus[] = {
    "cosh(t)^2/y^2",
    "exp(2*t)/y^2",
    "exp(2*t)/cosh(t)^2",
    "1/cosh(t)",
    "tanh(t)",
    "-tanh(t)",
    "cosh(t)^2",
    "exp(2*t)",
    "1/y^2",
    "-1/cosh(t)^2",
    "3*cosh(t) + 3*tanh(t)",
    "exp(-t) - 3",
    "2*exp(t)",
    "x^2 + y^2",
    "-(x^2 + y^2)/2",
    "x + y + t",
    "x - (y - t)",
    "x/(y*t)",
    "(x + y)*(x - y)",
    "-x^2",
    "(-x)^2",
    "x^-2",
    "2^3^2",
    "sin(x)*cos(y) + sinh(t)",
    "sqrt(1 + x^2)",
    "log(y)",
    "exp(-(x^2 + y^2 + t^2))",
    "1.5e-3*x + 2.25E+2",
    "((x))",
    "x - -y",
    "tanh(x - 2*y)*sqrt(2 + t^2) - log(3 + x*y)",
    "sin(x)^2 + cos(x)^2",
};

double rnd(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

TEST_CASE("precedence tree") {
  CHECK(parse("cosh(t)^2/y^2").to_sexpr() == "Div(Pow(Call(cosh,t),2),Pow(y,2))");
  CHECK(parse("a+b*c", {"a", "b", "c"}).to_sexpr() == "Add(a,Mul(b,c))");
  CHECK(parse("-x^2").to_sexpr() == "Neg(Pow(x,2))");
  CHECK(parse("x-y-t").to_sexpr() == "Sub(Sub(x,y),t)");
  CHECK(parse("x/y/t").to_sexpr() == "Div(Div(x,y),t)");
}

TEST_CASE("sigma closed form at random t") {
  const Expr e = parse("exp(2*t)/cosh(t)^2");
  std::mt19937_64 rng(11);
  for (int n = 0; n < 20; ++n) {
    const double t = rnd(rng, -1.0, 1.0);
    const double ref = std::exp(2 * t) / (std::cosh(t) * std::cosh(t));
    CHECK(std::abs(e.evaluate(std::array<double, 3>{0.0, 0.0, t}) - ref) <= 1e-12);
  }
}

TEST_CASE("syntax errors carry offsets") {
  try {
    parse("cosh(");
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 5);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse("2t"), ParseError);  // no implicit multiplication
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("x^1.5"), ParseError);
  CHECK_THROWS_AS(parse("(x + y"), ParseError);
  CHECK_THROWS_AS(parse("0x10"), ParseError);
}

TEST_CASE("unknown identifiers are named") {
  try {
    parse("cosh(z)");
    FAIL("expected an unknown identifier");
  } catch (const UnknownIdentifierError& e) {
    CHECK(e.symbol() == "z");
    CHECK(e.offset() == 5);
  }
  CHECK_THROWS_AS(parse("foo(x)"), UnknownIdentifierError);
  // Custom coordinate names.
  CHECK_NOTHROW(parse("r*sin(th)", {"r", "th", "z"}));
  CHECK_THROWS_AS(parse("x", {"r", "th", "z"}), UnknownIdentifierError);
}

TEST_CASE("eval_jet examples") {
  const Jet3 t = eval_jet(parse("t"), {0.0, 0.0, 0.5}, 1);
  CHECK(t.value() == 0.5);
  CHECK(t.d1(0) == 0.0);
  CHECK(t.d1(1) == 0.0);
  CHECK(t.d1(2) == 1.0);

  const Jet3 sech = eval_jet(parse("1/cosh(t)"), {0.0, 0.0, 0.0}, 2);
  CHECK(sech.value() == doctest::Approx(1.0));
  CHECK(sech.d1(2) == doctest::Approx(0.0));
  CHECK(sech.d2(2, 2) == doctest::Approx(-1.0));

  for (int order = 0; order <= 3; ++order) {
    try {
      eval_jet(parse("log(y)"), {0.0, -1.0, 0.0}, order);
      FAIL("expected a domain error");
    } catch (const DomainError& e) {
      CHECK(e.function() == "log");
      CHECK(e.value() == -1.0);
      CHECK(e.context().find("log(y)") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(eval_jet(parse("1/(y - 1)"), {0.0, 1.0, 0.0}, 2), DomainError);
  CHECK_THROWS_AS(eval_jet(parse("x"), {0.0, 0.0, 0.0}, 4), ArgumentError);
}

TEST_CASE("eval at order k never reads above k") {
  const Expr e = parse("exp(x*y)/cosh(t) + sqrt(2 + x)");
  for (int order = 0; order <= 3; ++order) {
    const Jet3 j = eval_jet(e, {0.1, 0.2, 0.3}, order);
    CHECK(j.order() == order);
    // The unused packed tiers stay zero.
    for (int i = order < 1 ? 0 : 3; i < 3; ++i) CHECK(j.raw_d1()[i] == 0.0);
    if (order < 2)
      for (double v : j.raw_d2()) CHECK(v == 0.0);
    if (order < 3)
      for (double v : j.raw_d3()) CHECK(v == 0.0);
  }
}

TEST_CASE("printing round trip is idempotent") {
  int count = 0;
  for (const char* src : kCorpus) {
    const std::string s = src;
    const std::string once = parse(s).to_string();
    const std::string twice = parse(once).to_string();
    CAPTURE(s);
    CHECK(once == twice);
    CHECK(parse(once).to_sexpr() == parse(s).to_sexpr());
    ++count;
  }
  CHECK(count >= 30);
}

TEST_CASE("printed form evaluates like the source") {
  std::mt19937_64 rng(5);
  for (const char* src : kCorpus) {
    const std::string s = src;
    const Expr a = parse(s);
    const Expr b = parse(a.to_string());
    for (int n = 0; n < 5; ++n) {
      const std::array<double, 3> at{rnd(rng, -1, 1), rnd(rng, 0.5, 2), rnd(rng, -1, 1)};
      CHECK(a.evaluate(at) == doctest::Approx(b.evaluate(at)).epsilon(1e-14));
    }
  }
}

TEST_CASE("a+b*c is a+(b*c) numerically") {
  const Expr e = parse("a+b*c", {"a", "b", "c"});
  std::mt19937_64 rng(3);
  for (int n = 0; n < 50; ++n) {
    const double a = rnd(rng, -5, 5), b = rnd(rng, -5, 5), c = rnd(rng, -5, 5);
    CHECK(e.evaluate(std::array<double, 3>{a, b, c}) == a + (b * c));
  }
}

TEST_CASE("integer powers") {
  CHECK(parse("2^3^2").evaluate(std::array<double, 3>{0, 0, 0}) == 512.0);
  CHECK(parse("(-x)^2").evaluate(std::array<double, 3>{3, 0, 0}) == 9.0);
  CHECK(parse("-x^2").evaluate(std::array<double, 3>{3, 0, 0}) == -9.0);
  CHECK(parse("x^-2").evaluate(std::array<double, 3>{2, 0, 0}) == 0.25);
}
