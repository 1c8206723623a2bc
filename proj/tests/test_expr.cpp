#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "zonoreach/errors.hpp"
#include "zonoreach/expr.hpp"
#include "zonoreach/system.hpp"

using namespace zonoreach;
using namespace zonoreach::test;

TEST_CASE("parsing and evaluation") {
  const Expr v = parse_expr("x2", 2);
  CHECK(v->op == Op::Var);
  CHECK(v->index == 1);
  CHECK(eval(parse_expr("-x1 + x2^2", 2), vec({1, 2})) == doctest::Approx(3.0));
  CHECK(eval(parse_expr("2*x1 - 3/x2 + -x1^2", 2), vec({1, 2})) == doctest::Approx(2 - 1.5 - 1));
  CHECK(eval(parse_expr("x1 - x2 - 1", 2), vec({5, 2})) == doctest::Approx(2.0));
  CHECK(eval(parse_expr("8 / 2 / 2", 1), vec({0})) == doctest::Approx(2.0));
  CHECK(eval(parse_expr("sqrt(x1)*1e-1", 1), vec({4})) == doctest::Approx(0.2));
  CHECK(eval(parse_expr("(x1 + 1)^-2", 1), vec({1})) == doctest::Approx(0.25));
  CHECK(eval(parse_expr("2^3^2", 1), vec({0})) == doctest::Approx(64.0));
}

TEST_CASE("unary minus binds looser than power") {
  CHECK(eval(parse_expr("-x1^2", 1), vec({3})) == doctest::Approx(-9.0));
  CHECK(eval(parse_expr("(-x1)^2", 1), vec({3})) == doctest::Approx(9.0));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS((void)parse_expr("x3", 2), ParseError);
  try {
    (void)parse_expr("x1 + y", 1);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS((void)parse_expr("x1 +", 1), ParseError);
  CHECK_THROWS_AS((void)parse_expr("(x1", 1), ParseError);
  CHECK_THROWS_AS((void)parse_expr("x1^x1", 1), ParseError);
  CHECK_THROWS_AS((void)parse_expr("sin(x1)", 1), ParseError);
  CHECK_THROWS_AS((void)parse_expr("x0", 1), ParseError);
  CHECK_THROWS_AS((void)parse_expr("x1 x1", 1), ParseError);
}

TEST_CASE("print then parse is a fixpoint") {
  for (const std::string& name : benchmark_names()) {
    const Benchmark b = benchmark(name);
    for (const Expr& e : b.system.rhs()) {
      const Expr again = parse_expr(to_string(e), b.system.dim());
      CHECK(structurally_equal(e, again));
      CHECK(to_string(again) == to_string(e));
    }
  }
  for (const char* text : {"-(x1 - x2)", "x1 - (x2 - 3)", "x1/(x2*x1)", "--x1", "x1*-x2", "(x1 + x2)^3"}) {
    const Expr e = parse_expr(text, 2);
    CHECK(structurally_equal(e, parse_expr(to_string(e), 2)));
  }
}

TEST_CASE("symbolic derivatives match finite differences") {
  const Expr sq = parse_expr("x1^2", 1);
  CHECK(eval(differentiate(sq, 0), vec({3})) == doctest::Approx(6.0));
  Rng rng(42);
  for (const std::string& name : benchmark_names()) {
    const Benchmark b = benchmark(name);
    const int n = b.system.dim();
    const Box hull = interval_hull(b.x0);
    for (int trial = 0; trial < 1000; ++trial) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x(i) = hull.lower(i) + uniform01(rng) * hull.width()(i);
      const Mat j = b.system.jacobian(x);
      for (int col = 0; col < n; ++col) {
        const double step = 1e-5;
        Vec xp = x;
        Vec xm = x;
        xp(col) += step;
        xm(col) -= step;
        const Vec fd = (b.system.eval(xp) - b.system.eval(xm)) / (2 * step);
        for (int row = 0; row < n; ++row) {
          const double scale = std::max({1.0, std::abs(fd(row)), std::abs(j(row, col))});
          CHECK(std::abs(fd(row) - j(row, col)) <= 1e-5 * scale);
        }
      }
    }
  }
}

TEST_CASE("interval evaluation encloses point evaluation") {
  Rng rng(9);
  for (const std::string& name : benchmark_names()) {
    const Benchmark b = benchmark(name);
    const int n = b.system.dim();
    Box box = interval_hull(b.x0);
    const std::vector<Interval> range = b.system.interval_eval(box);
    for (int trial = 0; trial < 1000; ++trial) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x(i) = box.lower(i) + uniform01(rng) * box.width()(i);
      const Vec fx = b.system.eval(x);
      for (int i = 0; i < n; ++i) CHECK(range[static_cast<std::size_t>(i)].contains(fx(i)));
    }
  }
  const Interval sq = interval_eval(parse_expr("x1^2", 1), Box(vec({-1}), vec({2})));
  CHECK(sq.lower <= 0.0);
  CHECK(sq.upper >= 4.0);
  CHECK(sq.upper < 4.0 + 1e-12);
  const Interval prod = interval_eval(parse_expr("x1*x1", 1), Box(vec({-1}), vec({2})));
  CHECK(prod.lower <= -2.0);
}

TEST_CASE("interval domain errors") {
  CHECK_THROWS_AS((void)interval_eval(parse_expr("1/x1", 1), Box(vec({-1}), vec({1}))), DomainError);
  CHECK_THROWS_AS((void)interval_eval(parse_expr("sqrt(x1)", 1), Box(vec({-1}), vec({1}))), DomainError);
  CHECK(interval_eval(parse_expr("sqrt(x1)", 1), Box(vec({4}), vec({9}))).contains(3.0));
}

TEST_CASE("compiled programs agree with the tree") {
  const Expr e = parse_expr("sqrt(x1)*x2 - 3/(x1 + x2^2) + -x2^3", 2);
  const Program p(e);
  const Vec x = vec({2.5, -0.7});
  CHECK(p(x.data()) == doctest::Approx(eval(e, x)).epsilon(1e-15));
  const std::vector<Interval> box = {Interval(2, 3), Interval(-1, 1)};
  const Interval a = p(box.data());
  const Interval b = interval_eval(e, box);
  CHECK(a.lower == b.lower);
  CHECK(a.upper == b.upper);
}
