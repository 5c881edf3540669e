#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sasaki/expression.hpp"
#include "support/oracles.hpp"
#include "support/parser_cases.hpp"

using namespace sasaki::expr;

namespace {

Symbols with_c(double c) {
  Symbols s = Symbols::defaults();
  s.constants["c"] = c;
  return s;
}

double at(const Expression& e, std::vector<double> b) { return e.evaluate(b); }

}  // namespace

TEST(Parse, WorkedExamples) {
  EXPECT_DOUBLE_EQ(at(parse("1/(1+(c/4)*(x1^2+x2^2))^2", with_c(1.0)), {2, 0}), 0.25);
  Expression e = parse("cos(u1)^2");
  EXPECT_NEAR(e.evaluate(std::map<std::string, double>{{"u1", std::numbers::pi / 4}}), 0.5, 1e-15);
  try {
    parse("x1 + * 2");
    FAIL() << "expected a syntax error";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line(), 1);
    EXPECT_EQ(err.column(), 6);
    EXPECT_FALSE(err.expected().empty());
  }
}

TEST(Parse, Precedence) {
  EXPECT_DOUBLE_EQ(at(parse("2 + 3 * 4"), {}), 14.0);
  EXPECT_DOUBLE_EQ(at(parse("2 ^ 3 ^ 2"), {}), 512.0);
  EXPECT_DOUBLE_EQ(at(parse("-2 ^ 2"), {}), -4.0);
  EXPECT_DOUBLE_EQ(at(parse("8 / 4 / 2"), {}), 1.0);
  EXPECT_DOUBLE_EQ(at(parse("2 * -3"), {}), -6.0);
}

TEST(Parse, GoldenValuesAndDerivatives) {
  const Symbols syms = with_c(parser_cases::kC);
  for (const auto& g : parser_cases::golden()) {
    Expression e = parse(g.src, syms);
    ValueGradient vg = eval_with_duals(e, g.at);
    EXPECT_NEAR(vg.value, g.f(g.at.data()), 1e-12 * (1 + std::abs(vg.value))) << g.src;
    for (int k = 0; k < 3; ++k) {
      double fd = oracles::fd_partial([&](const std::vector<double>& x) { return g.f(x.data()); }, g.at, k, 1e-3);
      EXPECT_NEAR(vg.gradient[k], fd, 1e-8 * (1 + std::abs(fd))) << g.src << " d/dx" << k + 1;
    }
  }
}

TEST(Parse, MalformedInputsCarryPositions) {
  for (const auto& m : parser_cases::malformed()) {
    try {
      parse(m.src);
      ADD_FAILURE() << "no error for '" << m.src << "'";
    } catch (const ParseError& err) {
      EXPECT_EQ(err.line(), m.line) << m.src << ": " << err.what();
      EXPECT_EQ(err.column(), m.column) << m.src << ": " << err.what();
      EXPECT_NE(std::string(err.what()).find("line " + std::to_string(m.line)), std::string::npos);
    }
  }
}

TEST(Parse, PrintParseIsAFixedPoint) {
  const Symbols syms = with_c(parser_cases::kC);
  for (const auto& g : parser_cases::golden()) {
    std::string once = parse(g.src, syms).to_string();
    Expression back = parse(once, syms);
    EXPECT_EQ(back.to_string(), once) << g.src;
    EXPECT_NEAR(back.evaluate(g.at), g.f(g.at.data()), 1e-12 * (1 + std::abs(g.f(g.at.data())))) << once;
  }
  EXPECT_EQ(parse("1/(1+(c/4)*(x1^2+x2^2))^2", with_c(1)).to_string(), "1 / (1 + c / 4 * (x1^2 + x2^2))^2");
}

TEST(Parse, FreeVariables) {
  Expression e = parse("x1 * sin(u2) + pi");
  EXPECT_EQ(e.free_variables(), (std::set<std::string>{"u2", "x1"}));
  Symbols s;
  s.variables = Symbols::indexed("t", 2);
  EXPECT_THROW(parse("t3", s), ParseError);
  EXPECT_DOUBLE_EQ(at(parse("t1 - t2", s), {5, 3}), 2.0);
}

TEST(Evaluate, DomainErrorsCarryLocation) {
  try {
    at(parse("1 / (x1 - 1)"), {1.0});
    FAIL();
  } catch (const EvalError& err) {
    EXPECT_EQ(err.line(), 1);
    EXPECT_EQ(err.column(), 3);
  }
  EXPECT_THROW(at(parse("log(x1)"), {0.0}), EvalError);
  EXPECT_THROW(at(parse("sqrt(x1)"), {-1.0}), EvalError);
  EXPECT_THROW(at(parse("x1 + x2"), {1.0}), EvalError);
  EXPECT_THROW(parse("x1 * x2").evaluate(std::map<std::string, double>{{"x1", 1.0}}), EvalError);
}

TEST(Evaluate, DualExamples) {
  Expression sq = parse("x1^2");
  std::vector<double> b{3.0};
  ValueGradient vg = eval_with_duals(sq, b);
  EXPECT_DOUBLE_EQ(vg.value, 9.0);
  EXPECT_DOUBLE_EQ(vg.gradient[0], 6.0);
  Expression conf = parse("1/(1+(c/4)*(x1^2+x2^2))^2", with_c(1.0));
  std::vector<double> origin{0.0, 0.0};
  ValueGradient g0 = eval_with_duals(conf, origin);
  EXPECT_DOUBLE_EQ(g0.value, 1.0);
  EXPECT_EQ(g0.gradient.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Evaluate, RandomPolynomialsAgainstFiniteDifferences) {
  oracles::Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    // sum of a_k x1^p x2^q with small integer powers
    std::string src;
    std::vector<std::array<double, 3>> terms;
    for (int t = 0; t < 4; ++t) {
      double a = std::round(rng.uniform(-5, 5) * 100) / 100;
      int p = rng.index(4), q = rng.index(4);
      terms.push_back({a, double(p), double(q)});
      src += (t ? " + " : "") + std::to_string(a) + " * x1^" + std::to_string(p) + " * x2^" + std::to_string(q);
    }
    auto f = [&](const std::vector<double>& x) {
      double s = 0;
      for (const auto& t : terms) s += std::stod(std::to_string(t[0])) * std::pow(x[0], t[1]) * std::pow(x[1], t[2]);
      return s;
    };
    std::vector<double> x{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
    ValueGradient vg = eval_with_duals(parse(src), x);
    EXPECT_NEAR(vg.value, f(x), 1e-12 * (1 + std::abs(f(x)))) << src;
    for (int k = 0; k < 2; ++k) {
      double fd = oracles::fd_partial(f, x, k, 1e-3);
      EXPECT_NEAR(vg.gradient[k], fd, 1e-8 * (1 + std::abs(fd))) << src;
    }
  }
}
