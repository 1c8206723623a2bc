#include <doctest.h>

#include "helpers.hpp"
#include "zonoreach/boundary.hpp"
#include "zonoreach/kernels.hpp"
#include "zonoreach/system.hpp"
#include "zonoreach/tiling.hpp"

#include <limits>

using namespace zonoreach;
using namespace zonoreach::test;

TEST_CASE("hyperplane candidates: serial equals parallel") {
  Rng rng(1);
  const Zonotope z = random_zonotope(4, 9, rng);
  const auto a = hyperplane_bases(z.generators(), ExecPolicy::Serial);
  const auto b = hyperplane_bases(z.generators(), ExecPolicy::Parallel);
  CHECK(a == b);
  const Boundary s = extract_boundary(z, ExecPolicy::Serial);
  const Boundary p = extract_boundary(z, ExecPolicy::Parallel);
  CHECK(s.matrix.entries == p.matrix.entries);
}

TEST_CASE("point propagation: serial equals parallel") {
  const Benchmark b = benchmark("Rossler");
  Rng rng(2);
  std::vector<Vec> pts;
  for (int i = 0; i < 64; ++i) pts.push_back(sample_uniform(b.x0, rng));
  const auto s = kernels::propagate_points(b.system, pts, 0.3, 1e-9, ExecPolicy::Serial);
  const auto p = kernels::propagate_points(b.system, pts, 0.3, 1e-9, ExecPolicy::Parallel);
  REQUIRE(s.size() == p.size());
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(max_abs_diff(s[i], p[i]) == 0.0);
}

TEST_CASE("outer steps: serial equals parallel, failures per entry") {
  const Benchmark b = benchmark("Lotka-Volterra");
  const std::vector<Zonotope> sets = refine_boundary(b.x0, 40, ExecPolicy::Serial);
  const auto s = kernels::outer_steps(b.system, sets, 0.05, {}, ExecPolicy::Serial);
  const auto p = kernels::outer_steps(b.system, sets, 0.05, {}, ExecPolicy::Parallel);
  REQUIRE(s.size() == p.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].ok);
    CHECK(max_abs_diff(s[i].set.generators(), p[i].set.generators()) == 0.0);
  }
  const System blow = System::parse("blow", {"x1^2"});
  OuterParams strict;
  strict.max_step_splits = 0;
  const auto f = kernels::outer_steps(blow, {Zonotope(vec({10}), cols({{0.1}}))}, 1.0, strict, ExecPolicy::Parallel);
  REQUIRE(f.size() == 1);
  CHECK_FALSE(f[0].ok);
  CHECK_FALSE(f[0].error.empty());
}

TEST_CASE("membership: serial equals parallel") {
  Rng rng(3);
  const Zonotope z = random_zonotope(3, 6, rng);
  std::vector<Vec> pts;
  for (int i = 0; i < 200; ++i) pts.push_back(z.center() + 3.0 * (sample_uniform(z, rng) - z.center()));
  pts.push_back(Vec::Constant(3, std::numeric_limits<double>::quiet_NaN()));
  const auto s = kernels::membership(z, pts, 1e-9, ExecPolicy::Serial);
  const auto p = kernels::membership(z, pts, 1e-9, ExecPolicy::Parallel);
  CHECK(s == p);
  CHECK(s.back() == 0);
  int inside = 0;
  for (char c : s) inside += c;
  CHECK(inside > 0);
  CHECK(inside < 200);
}
