// crofton-lab tests: expression parsing, evaluation, differentiation
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "crofton/expr.hpp"
#include "support.hpp"

using crofton::CompiledExpr;
using crofton::DomainError;
using crofton::ExprTree;
using crofton::ParseError;

TEST_CASE("parse and evaluate basics") {
  CHECK(ExprTree::parse("1").eval(0.3, -0.7) == 1.0);
  CHECK(ExprTree::parse("2/(1+x^2+y^2)").eval(0.0, 0.0) == 2.0);
  CHECK(ExprTree::parse("2/(1+x^2+y^2)").eval(1.0, 0.0) == doctest::Approx(1.0));
  CHECK(ExprTree::parse("x^2+y^2").eval(3.0, 4.0) == 25.0);
  CHECK(ExprTree::parse("x*y").eval(2.0, 0.5) == 1.0);
}

TEST_CASE("precedence and associativity") {
  CHECK(ExprTree::parse("1+2*3").eval(0, 0) == 7.0);
  CHECK(ExprTree::parse("2*3^2").eval(0, 0) == 18.0);
  CHECK(ExprTree::parse("-x^2").eval(2, 0) == -4.0);     // power binds tighter
  CHECK(ExprTree::parse("2^-1").eval(0, 0) == 0.5);
  CHECK(ExprTree::parse("8/4/2").eval(0, 0) == 1.0);     // left associative
  CHECK(ExprTree::parse("8-4-2").eval(0, 0) == 2.0);
  CHECK(ExprTree::parse("2^3^2").eval(0, 0) == 64.0);    // (2^3)^2, left
  CHECK(ExprTree::parse("(1+x)*(1-x)").eval(0.5, 0) == doctest::Approx(0.75));
  CHECK(ExprTree::parse("sin(x)^2+cos(x)^2").eval(0.9, 0) == doctest::Approx(1.0));
}

TEST_CASE("syntax errors carry a position") {
  CHECK_THROWS_AS(ExprTree::parse(""), ParseError);
  try {
    ExprTree::parse("1+*2");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position == 2);
  }
  CHECK_THROWS_AS(ExprTree::parse("1+"), ParseError);
  CHECK_THROWS_AS(ExprTree::parse("(1+2"), ParseError);
  CHECK_THROWS_AS(ExprTree::parse("sin x"), ParseError);
  CHECK_THROWS_AS(ExprTree::parse("z+1"), ParseError);     // unknown identifier
  CHECK_THROWS_AS(ExprTree::parse("tan(x)"), ParseError);
  CHECK_THROWS_AS(ExprTree::parse("x^y"), ParseError);     // non-constant exponent
  CHECK_THROWS_AS(ExprTree::parse("x^(1+y)"), ParseError);
  CHECK(ExprTree::parse("x^(1+2)").eval(2, 0) == 8.0);     // constant exponent folds
}

TEST_CASE("domain errors are reported, not propagated as NaN") {
  CHECK_THROWS_AS(ExprTree::parse("1/x").eval(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(ExprTree::parse("log(x)").eval(-1.0, 0.0), DomainError);
  CHECK_THROWS_AS(ExprTree::parse("log(x)").eval(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(ExprTree::parse("sqrt(x)").eval(-0.5, 0.0), DomainError);
  CHECK_THROWS_AS(ExprTree::parse("x^-1").eval(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(ExprTree::parse("x^0.5").eval(-1.0, 0.0), DomainError);
}

TEST_CASE("derivative point checks") {
  ExprTree dx = ExprTree::parse("x^2*y").derivative('x');
  CHECK(dx.eval(3.0, 2.0) == doctest::Approx(12.0));
  ExprTree dy = ExprTree::parse("y").derivative('x');
  CHECK(dy.eval(0.4, -0.9) == 0.0);
  // frozen from the finite-difference oracle (step 1e-5)
  ExprTree hemi = ExprTree::parse("2/(1+x^2+y^2)");
  CHECK(hemi.derivative('x').eval(1.0, 0.0) == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(testsupport::fd_partial(hemi, 'x', 1.0, 0.0) ==
        doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("derivative functions") {
  auto check_at = [](const char* src, char var, double x, double y) {
    ExprTree t = ExprTree::parse(src);
    double sym = t.derivative(var).eval(x, y);
    double fd = testsupport::fd_partial(t, var, x, y);
    CHECK(std::abs(sym - fd) / std::max(1.0, std::abs(sym)) < 1e-6);
  };
  check_at("sin(x*y)", 'x', 0.3, 0.8);
  check_at("cos(x+y^2)", 'y', -0.2, 0.5);
  check_at("exp(x*0.5)", 'x', 0.7, 0.0);
  check_at("log(1.5+x^2)", 'x', 0.4, 0.0);
  check_at("sqrt(0.5+y^2)", 'y', 0.0, 0.6);
  check_at("(x+y)/(2+x^2)", 'x', 0.3, -0.4);
  check_at("x^3", 'x', 1.2, 0.0);
  check_at("x^-2", 'x', 0.7, 0.0);
  check_at("-(x*y-1)^2", 'y', 0.2, 0.9);
}

TEST_CASE("randomized derivative vs finite differences") {
  testsupport::RandomExprGen gen(2024);
  crofton::Rng pts(99);
  int trees_done = 0;
  while (trees_done < 20) {
    std::string src = gen.generate(3);
    ExprTree tree = ExprTree::parse(src);
    ExprTree dx = tree.derivative('x');
    ExprTree dy = tree.derivative('y');
    int points_done = 0, attempts = 0;
    while (points_done < 20 && attempts < 400) {
      ++attempts;
      double x = pts.uniform(-0.9, 0.9), y = pts.uniform(-0.9, 0.9);
      double sx, sy, fx, fy;
      try {
        sx = dx.eval(x, y);
        sy = dy.eval(x, y);
        fx = testsupport::fd_partial(tree, 'x', x, y);
        fy = testsupport::fd_partial(tree, 'y', x, y);
      } catch (const DomainError&) {
        continue;
      }
      if (!std::isfinite(sx) || !std::isfinite(sy) || std::abs(sx) > 1e6 ||
          std::abs(sy) > 1e6)
        continue;
      CHECK(std::abs(sx - fx) / std::max(1.0, std::abs(sx)) <= 1e-6);
      CHECK(std::abs(sy - fy) / std::max(1.0, std::abs(sy)) <= 1e-6);
      ++points_done;
    }
    CHECK(points_done == 20);
    ++trees_done;
  }
}

TEST_CASE("print -> parse round trip preserves values") {
  const char* sources[] = {
      "2/(1+x^2+y^2)", "1+0.1*x", "-x^2+sin(x*y)", "sqrt(0.5+(x-y)^2)",
      "exp(0.3*x)*cos(y)", "8/4/2", "2^3^2", "x^-2+1",
  };
  for (const char* src : sources) {
    ExprTree t = ExprTree::parse(src);
    ExprTree t2 = ExprTree::parse(t.to_string());
    for (double x : {-0.8, -0.1, 0.33, 0.9}) {
      for (double y : {-0.7, 0.0, 0.52}) {
        CHECK(t.eval(x, y) == t2.eval(x, y));
      }
    }
  }
}

TEST_CASE("compiled evaluation matches the tree walk bit for bit") {
  testsupport::RandomExprGen gen(7);
  crofton::Rng pts(13);
  for (int k = 0; k < 30; ++k) {
    ExprTree tree = ExprTree::parse(gen.generate(3));
    CompiledExpr comp(tree);
    for (int i = 0; i < 25; ++i) {
      double x = pts.uniform(-1.0, 1.0), y = pts.uniform(-1.0, 1.0);
      double a;
      try {
        a = tree.eval(x, y);
      } catch (const DomainError&) {
        CHECK_THROWS_AS(comp.eval(x, y), DomainError);
        continue;
      }
      double b = comp.eval(x, y);
      CHECK(a == b);
    }
  }
}

TEST_CASE("evaluation is deterministic") {
  ExprTree t = ExprTree::parse("sin(x*3.7)+cos(y)/(2+x^2)");
  double v1 = t.eval(0.123456789, -0.987654321);
  double v2 = t.eval(0.123456789, -0.987654321);
  CHECK(v1 == v2);
}
