#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "zonoreach/errors.hpp"
#include "zonoreach/inner.hpp"
#include "zonoreach/lp.hpp"
#include "zonoreach/metrics.hpp"
#include "zonoreach/tiling.hpp"

using namespace zonoreach;
using namespace zonoreach::test;

namespace {

const Zonotope kPiece(vec({1, 0}), cols({{1.2, 0}, {0, 0.2}}));
const Zonotope kCandidate(vec({1, 1}), cols({{1, 0}, {0, 1}}));

// a within b, checked on many support directions.
bool nested(const Zonotope& a, const Zonotope& b, int directions, std::uint64_t seed) {
  Rng rng(seed);
  for (int k = 0; k < directions; ++k) {
    Vec d(a.dim());
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = 2.0 * uniform01(rng) - 1.0;
    if (support(a, d) > support(b, d) + 1e-9) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("attitude picks the longest independent generators") {
  const Vec at = attitude(kPiece);
  CHECK(max_abs_diff(at, vec({0, -1.2})) < 1e-15);

  const Zonotope flat(vec({0, 0, 0}), cols({{2, 0, 0}, {0, 1, 0}, {4, 0, 0}}));
  const Vec a3 = attitude(flat);
  CHECK(std::abs(a3(0)) < 1e-15);
  CHECK(std::abs(a3(1)) < 1e-15);
  CHECK(std::abs(a3(2)) > 0.0);

  const Zonotope scaled(kPiece.center(), 3.0 * kPiece.generators());
  CHECK(max_abs_diff(attitude(scaled), 3.0 * at) < 1e-15);

  CHECK_THROWS_AS((void)attitude(Zonotope(vec({0, 0, 0}), cols({{1, 0, 0}, {2, 0, 0}}))), RankDeficient);
}

TEST_CASE("contraction worked example, sorted generators") {
  const Zonotope out = contract(kCandidate, {kPiece}, 0.01, true);
  CHECK(max_abs_diff(out.center(), vec({1, 1.105})) < 1e-9);
  REQUIRE(out.num_generators() == 2);
  CHECK(max_abs_diff(out.generators(), cols({{0, 0.895}, {1, 0}})) < 1e-9);
  CHECK(zonotopes_disjoint(out, kPiece));
}

TEST_CASE("contraction worked example, unsorted generators") {
  const Zonotope out = contract(kCandidate, {kPiece}, 0.01, false);
  CHECK(max_abs_diff(out.center(), vec({1, 1.105})) < 1e-9);
  REQUIRE(out.num_generators() == 1);
  CHECK(max_abs_diff(out.generators(), cols({{0, 0.895}})) < 1e-9);
}

TEST_CASE("contraction edge cases") {
  CHECK(max_abs_diff(contract(kCandidate, {}, 1e-6).generators(), kCandidate.generators()) == 0.0);
  const Zonotope far(vec({10, 10}), cols({{1, 0}, {0, 1}}));
  const Zonotope kept = contract(kCandidate, {far}, 1e-6);
  CHECK(max_abs_diff(kept.center(), kCandidate.center()) == 0.0);
  CHECK_THROWS_AS((void)contract(kCandidate, {kPiece}, 0.0), Error);
  // A piece covering the whole candidate leaves nothing to keep.
  const Zonotope cover(vec({1, 1}), cols({{5, 0}, {0, 5}}));
  CHECK_THROWS_AS((void)contract(kCandidate, {cover}, 1e-6), ContractionCollapse);
}

TEST_CASE("contraction invariants on random boundary layouts") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2;
    const Zonotope cand = random_zonotope(n, n + 2, rng);
    std::vector<Zonotope> pieces;
    // Small pieces placed around the candidate's support points.
    for (int k = 0; k < 4; ++k) {
      Vec d(n);
      for (int i = 0; i < n; ++i) d(i) = 2.0 * uniform01(rng) - 1.0;
      Vec c = cand.center();
      for (Eigen::Index j = 0; j < cand.num_generators(); ++j) {
        c += (cand.generator(j).dot(d) >= 0 ? 0.8 : -0.8) * cand.generator(j);
      }
      pieces.emplace_back(c, 0.1 * Mat::Identity(n, n));
    }
    Zonotope out;
    try {
      out = contract(cand, pieces, 1e-6);
    } catch (const ContractionCollapse&) {
      continue;
    }
    CHECK(out.num_generators() <= cand.num_generators());
    for (const Zonotope& p : pieces) CHECK(zonotopes_disjoint(out, p));
    CHECK(nested(out, cand, 1000, 100 + trial));
  }
}

TEST_CASE("static flow removes only a thin collar") {
  const System zero = System::parse("zero", {"0", "0"});
  const Zonotope x0 = Zonotope::from_box(Box(vec({-1, -1}), vec({1, 1})));
  InnerParams p;
  p.boundary_budget = 8;
  const StepRecord r = inner_step(zero, x0, 0.05, p);
  REQUIRE(r.verified);
  CHECK(nested(r.candidate, x0, 1000, 3));
  const Box hb = interval_hull(r.candidate);
  CHECK(hb.width().minCoeff() > 2.0 - 1e-3);
}

TEST_CASE("linear decay step lies inside the image") {
  const System decay = System::parse("decay", {"-x1", "-x2"});
  const Zonotope x0 = Zonotope::from_box(Box(vec({-1, -1}), vec({1, 1})));
  InnerParams p;
  const double h = 0.05;
  const StepRecord r = inner_step(decay, x0, h, p);
  REQUIRE(r.verified);
  CHECK(r.candidate.num_generators() > 0);
  const Zonotope exact(x0.center(), std::exp(-h) * x0.generators());
  CHECK(nested(r.candidate, exact, 1000, 4));
  for (const Zonotope& piece : r.outer_pieces) CHECK(zonotopes_disjoint(r.candidate, piece));
}

TEST_CASE("driver bookkeeping") {
  const Benchmark b = benchmark("ElectroOsc");
  InnerParams p;
  p.N = 0;
  CHECK(inner_reach(b.system, b.x0, p).empty());

  p.N = 1;
  p.boundary_budget = b.budget;
  p.max_generators = b.max_generators;
  const auto recs = inner_reach(b.system, b.x0, p);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].verified);
  CHECK(recs[0].failure_stage.empty());
  CHECK(max_abs_diff(recs[0].U_k.center(), b.x0.center()) == 0.0);
  CHECK(soundness_check(b.system, recs[0].candidate, b.x0, b.h, 500, 9) == 1.0);
  CHECK(effective_budget(InnerParams{}, 3) == 24);
  CHECK(effective_budget(InnerParams{}, 1) == 2);
}

TEST_CASE("failures are recorded, not thrown") {
  // Finite escape: the outer engine cannot bound x' = x^2 near the blow-up time.
  const System blow = System::parse("blow", {"x1^2"});
  const Zonotope x0(vec({10}), cols({{0.1}}));
  InnerParams p;
  p.outer.max_step_splits = 1;
  StepRecord failed;
  p.N = 3;
  const auto recs = inner_reach(blow, x0, [&] {
    InnerParams q = p;
    q.h = 0.5;
    return q;
  }(), &failed);
  CHECK(recs.empty());
  CHECK_FALSE(failed.verified);
  CHECK_FALSE(failed.failure_stage.empty());
}

TEST_CASE("serial and parallel steps agree") {
  const Benchmark b = benchmark("ElectroOsc");
  InnerParams p;
  p.boundary_budget = 64;
  p.policy = ExecPolicy::Serial;
  const StepRecord s = inner_step(b.system, b.x0, b.h, p);
  p.policy = ExecPolicy::Parallel;
  const StepRecord q = inner_step(b.system, b.x0, b.h, p);
  REQUIRE(s.verified);
  REQUIRE(q.verified);
  CHECK(max_abs_diff(s.candidate.generators(), q.candidate.generators()) == 0.0);
  CHECK(max_abs_diff(s.candidate.center(), q.candidate.center()) == 0.0);
}
