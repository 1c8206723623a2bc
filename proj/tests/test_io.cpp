#include <doctest.h>

#include "helpers.hpp"
#include "zonoreach/errors.hpp"
#include "zonoreach/io.hpp"

using namespace zonoreach;
using namespace zonoreach::test;

TEST_CASE("zonotope JSON layout and round trip") {
  const Zonotope z(vec({4, 4, 2}), cols({{1, 0, 0}, {0.1, 1, 2}}));
  const io::Json j = io::to_json(z);
  CHECK(j.dump() == R"({"center":[4.0,4.0,2.0],"generators":[[1.0,0.1],[0.0,1.0],[0.0,2.0]]})");
  const Zonotope back = io::zonotope_from_json(j);
  CHECK(max_abs_diff(back.center(), z.center()) == 0.0);
  CHECK(max_abs_diff(back.generators(), z.generators()) == 0.0);

  Rng rng(8);
  const Zonotope r = random_zonotope(4, 7, rng);
  const Zonotope rr = io::zonotope_from_json(io::Json::parse(io::dump(io::to_json(r))));
  CHECK(max_abs_diff(rr.generators(), r.generators()) == 0.0);
  CHECK(max_abs_diff(rr.center(), r.center()) == 0.0);

  const Zonotope pt = io::zonotope_from_json(io::Json::parse(R"({"center":[1,2],"generators":[]})"));
  CHECK(pt.num_generators() == 0);
}

TEST_CASE("zonotope JSON rejects malformed input") {
  CHECK_THROWS_AS((void)io::zonotope_from_json(io::Json::parse(R"({"center":[1,2]})")), Error);
  CHECK_THROWS_AS((void)io::zonotope_from_json(io::Json::parse(R"({"center":[],"generators":[]})")), Error);
  CHECK_THROWS_AS((void)io::zonotope_from_json(io::Json::parse(R"({"center":[1,2],"generators":[[1]]})")), Error);
  CHECK_THROWS_AS((void)io::zonotope_from_json(io::Json::parse(R"({"center":[1,2],"generators":[[1],[1,2]]})")),
                  Error);
}

TEST_CASE("step record round trip") {
  StepRecord r;
  r.U_k = Zonotope(vec({0, 0}), cols({{1, 0}, {0, 1}}));
  r.candidate = Zonotope(vec({0.1, 0}), cols({{0.9, 0}}));
  r.outer_whole = Zonotope(vec({0, 0}), cols({{1.1, 0}, {0, 1.1}}));
  r.boundary_pieces = {Zonotope(vec({1, 0}), cols({{0, 1}}))};
  r.outer_pieces = {Zonotope(vec({1, 0}), cols({{0, 1.1}, {0.01, 0}}))};
  r.verified = false;
  r.failure_stage = "verify";
  r.failure = "x";
  r.h = 0.05;
  r.substeps = 2;
  const io::Json j = io::to_json(r, 3);
  CHECK(j.at("step") == 3);
  const StepRecord b = io::step_record_from_json(j);
  CHECK(b.h == r.h);
  CHECK(b.substeps == 2);
  CHECK_FALSE(b.verified);
  CHECK(b.failure_stage == "verify");
  CHECK(max_abs_diff(b.candidate.generators(), r.candidate.generators()) == 0.0);
  REQUIRE(b.outer_pieces.size() == 1);
  CHECK(io::dump(io::to_json(b, 3)) == io::dump(j));
}

TEST_CASE("csv and reports") {
  IntMat m(2, 3);
  m << 1, -1, 0, 0, 1, -1;
  CHECK(io::to_csv(m) == "1,-1,0\n0,1,-1\n");
  EvalReport e;
  e.gamma_min = 0.5;
  e.width_ratios = {0.5, 0.75};
  e.seed = 7;
  const io::Json j = io::to_json(e);
  CHECK(j.at("seed") == 7);
  CHECK(j.at("width_ratios").size() == 2);
  CHECK_THROWS_AS((void)io::read_file("/nonexistent/zz.json"), Error);
}
