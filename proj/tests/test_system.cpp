#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "zonoreach/errors.hpp"
#include "zonoreach/system.hpp"

using namespace zonoreach;
using namespace zonoreach::test;

TEST_CASE("integration against closed forms") {
  const System decay = System::parse("decay", {"-x1"});
  CHECK(integrate(decay, vec({1}), 1.0)(0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-7));
  const System osc = System::parse("osc", {"x2", "-x1"});
  const Vec back = integrate(osc, vec({1, 0}), 2 * M_PI);
  CHECK(std::abs(back(0) - 1.0) < 1e-6);
  CHECK(std::abs(back(1)) < 1e-6);
}

TEST_CASE("Rossler from its center passes a self-convergence check") {
  const Benchmark b = benchmark("Rossler");
  const Vec coarse = integrate(b.system, b.x0.center(), 0.1, 1e-9);
  const Vec fine = integrate(b.system, integrate(b.system, b.x0.center(), 0.05, 1e-11), 0.05, 1e-11);
  CHECK((coarse - fine).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("time inversion") {
  const System s = System::parse("lin", {"2*x1 - x2", "x1 + 0.5*x2"});
  const System inv = time_invert(s);
  const Vec x = vec({0.3, -1.2});
  CHECK((inv.eval(x) + s.eval(x)).cwiseAbs().maxCoeff() < 1e-15);
  const System twice = time_invert(inv);
  for (int i = 0; i < 2; ++i) {
    CHECK(structurally_equal(twice.rhs()[static_cast<std::size_t>(i)], s.rhs()[static_cast<std::size_t>(i)]));
  }
  const Benchmark b = benchmark("ElectroOsc");
  const Vec fwd = integrate(b.system, b.x0.center(), 0.05);
  const Vec ret = integrate(time_invert(b.system), fwd, 0.05);
  CHECK((ret - b.x0.center()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("jacobian of a linear system is its matrix") {
  const System s = System::parse("lin", {"2*x1 - x2", "x1 + 0.5*x2"});
  Mat a(2, 2);
  a << 2, -1, 1, 0.5;
  CHECK(max_abs_diff(jacobian(s, vec({4, -7})), a) == 0.0);
  for (const Mat& h : hessian_bound(s, Box(vec({-1, -1}), vec({1, 1})))) CHECK(h.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hessian bound covers sampled second derivatives") {
  const System s = System::parse("q", {"x1*x2^2", "sqrt(x1)"});
  const Box box(vec({1, -1}), vec({2, 1}));
  const std::vector<Mat> hb = hessian_bound(s, box);
  // d2/dx2^2 of x1 x2^2 = 2 x1 <= 4; d2/dx1dx2 = 2 x2 <= 2; d2/dx1^2 sqrt = 1/(4 x1^1.5) <= 0.25.
  CHECK(hb[0](1, 1) >= 4.0);
  CHECK(hb[0](0, 1) >= 2.0);
  CHECK(hb[0](0, 0) == 0.0);
  CHECK(hb[1](0, 0) >= 0.25);
  CHECK(hb[1](0, 0) < 0.26);
}

TEST_CASE("benchmark registry") {
  CHECK(benchmark_names().size() == 7);
  const Benchmark osc = benchmark("ElectroOsc");
  CHECK(max_abs_diff(osc.x0.center(), vec({0, 3})) == 0.0);
  CHECK(max_abs_diff(interval_hull(osc.x0).radius(), vec({0.1, 0.1})) < 1e-15);
  CHECK(benchmark("Tank12").system.dim() == 12);
  const Benchmark lv = benchmark("Lotka-Volterra");
  CHECK(max_abs_diff(lv.x0.center(), Vec::Constant(4, 0.6)) == 0.0);
  CHECK(max_abs_diff(interval_hull(lv.x0).radius(), Vec::Constant(4, 0.2)) < 1e-15);
  CHECK(benchmark("BiologicalSystemII").system.dim() == 9);
  CHECK_THROWS_AS((void)benchmark("nope"), Error);
}

TEST_CASE("system config validation") {
  const std::string ok = R"({"name":"d","dim":1,"rhs":["-x1"],"x0_center":[1],"x0_radius":[0.1],"h":0.1,"T":1})";
  CHECK(benchmark_from_json(ok).system.dim() == 1);
  CHECK_THROWS_AS((void)benchmark_from_json(R"({"name":"d","dim":2,"rhs":["-x1"],"x0_center":[1],"x0_radius":[0.1],"h":0.1,"T":1})"), Error);
  CHECK_THROWS_AS((void)benchmark_from_json(R"({"name":"d","dim":1,"rhs":["-x1"],"x0_center":[1],"x0_radius":[0.1],"h":0.1,"T":1,"extra":2})"), Error);
  CHECK_THROWS_AS((void)benchmark_from_json(R"({"name":"d","dim":1,"rhs":["-x2"],"x0_center":[1],"x0_radius":[0.1],"h":0.1,"T":1})"), ParseError);
}
