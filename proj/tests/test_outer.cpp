#include <doctest.h>

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "helpers.hpp"
#include "zonoreach/errors.hpp"
#include "zonoreach/kernels.hpp"
#include "zonoreach/lp.hpp"
#include "zonoreach/outer.hpp"

using namespace zonoreach;
using namespace zonoreach::test;

namespace {

int escapes(const System& s, const Zonotope& z, double h, int samples, std::uint64_t seed) {
  const Zonotope out = outer_step(s, z, h);
  Rng rng(seed);
  std::vector<Vec> starts;
  for (int i = 0; i < samples; ++i) starts.push_back(i % 2 == 0 ? sample_uniform(z, rng) : sample_point(z, rng));
  // Corners are where the flow map is stretched most.
  for (const Vec& v : sign_points(Zonotope(z.center(), z.generators()))) {
    if (starts.size() < static_cast<std::size_t>(samples) + 64) starts.push_back(v);
  }
  const std::vector<Vec> ends = kernels::propagate_points(s, starts, h, 1e-10, ExecPolicy::Parallel);
  int bad = 0;
  for (const Vec& e : ends) {
    if (!contains_point(out, e, 1e-8)) ++bad;
  }
  return bad;
}

}  // namespace

TEST_CASE("static flow keeps the set") {
  const System zero = System::parse("zero", {"0", "0"});
  const Zonotope z(vec({1, 2}), cols({{1, 0}, {0.5, 0.5}}));
  const Box y = a_priori_enclosure(zero, z, 0.1);
  CHECK(max_abs_diff(y.lower, interval_hull(z).lower) < 1e-9);
  CHECK(max_abs_diff(y.upper, interval_hull(z).upper) < 1e-9);
  const Zonotope out = outer_step(zero, z, 0.1);
  CHECK(support(out, vec({1, 0})) == doctest::Approx(support(z, vec({1, 0}))).epsilon(1e-9));
  CHECK(contains_zonotope(z, out));
  const Zonotope pt = outer_point(zero, vec({3, 4}), 0.1);
  CHECK(interval_hull(pt).width().maxCoeff() < 1e-9);
}

TEST_CASE("enclosure of a decaying point") {
  const System decay = System::parse("decay", {"-x1"});
  const Box y = a_priori_enclosure(decay, Zonotope::point(vec({1})), 0.1);
  CHECK(y.lower(0) <= std::exp(-0.1));
  CHECK(y.upper(0) >= 1.0);
}

TEST_CASE("linear systems match the matrix exponential") {
  const System s = System::parse("lin", {"-0.5*x1 + 1.5*x2", "-x1 - 0.2*x2"});
  Mat a(2, 2);
  a << -0.5, 1.5, -1, -0.2;
  const double h = 0.1;  // |A| h <= 0.2
  const Zonotope z(vec({1, 1}), cols({{0.2, 0}, {0.05, 0.1}}));
  const Mat e = (a * h).exp();
  const Zonotope exact(e * z.center(), e * z.generators());
  const Zonotope out = outer_step(s, z, h);
  CHECK(contains_zonotope(exact, out));
  const Box he = interval_hull(exact);
  const Box ho = interval_hull(out);
  CHECK((ho.width() - he.width()).maxCoeff() <= 1e-6);
}

TEST_CASE("outer steps enclose sampled trajectories") {
  for (const char* name : {"ElectroOsc", "Rossler", "Lotka-Volterra", "Tank6"}) {
    const Benchmark b = benchmark(name);
    for (double h : {0.01, 0.05}) CHECK(escapes(b.system, b.x0, h, 1000, 1) == 0);
  }
}

TEST_CASE("outer point contains the true flow and shrinks with h") {
  const Benchmark b = benchmark("ElectroOsc");
  double previous = 1e9;
  for (double h : {0.08, 0.04, 0.02, 0.01}) {
    const Zonotope out = outer_point(b.system, b.x0.center(), h);
    CHECK(contains_point(out, integrate(b.system, b.x0.center(), h), 1e-10));
    const double width = interval_hull(out).width().maxCoeff();
    CHECK(width < previous);
    previous = width;
  }
}

TEST_CASE("girard reduction encloses the original") {
  Rng rng(6);
  const Zonotope z = random_zonotope(2, 8, rng);
  const Zonotope r = reduce_outer(z, 4);
  CHECK(r.num_generators() <= 4);
  CHECK(contains_zonotope(z, r));
  CHECK(reduce_outer(z, 20).num_generators() == 8);
}

TEST_CASE("enclosure failure surfaces as an error") {
  const System blow = System::parse("blow", {"x1^2"});
  OuterParams p;
  p.max_step_splits = 0;
  CHECK_THROWS_AS((void)outer_step(blow, Zonotope::point(vec({10})), 1.0, p), EnclosureFailure);
}

TEST_CASE("flat sets get an enclosure") {
  // A facet of the initial box: one axis has zero width while the others drift.
  for (const char* name : {"BiologicalSystemI", "Tank6"}) {
    const Benchmark b = benchmark(name);
    Mat g = b.x0.generators();
    g.col(g.cols() - 1).setZero();
    const Zonotope facet(b.x0.center() + b.x0.generator(b.x0.num_generators() - 1), g);
    CHECK_NOTHROW((void)a_priori_enclosure(b.system, facet, b.h));
    CHECK(escapes(b.system, facet.without_zero_generators(), b.h, 500, 21) == 0);
  }
}
