#include <doctest.h>

#include <cmath>
#include <numeric>

#include "helpers.hpp"
#include "zonoreach/errors.hpp"
#include "zonoreach/lp.hpp"
#include "zonoreach/tiling.hpp"

using namespace zonoreach;
using namespace zonoreach::test;

namespace {

Zonotope example_zonotope() {
  return Zonotope(vec({4, 4, 2}), cols({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}}));
}

double total_volume(const std::vector<Zonotope>& zs) {
  double v = 0.0;
  for (const Zonotope& z : zs) v += volume(z);
  return v;
}

bool covered(const std::vector<Zonotope>& tiles, const Vec& x) {
  for (const Zonotope& t : tiles) {
    if (contains_point(t, x, 1e-9)) return true;
  }
  return false;
}

void check_tiling(const Zonotope& z, const std::vector<Zonotope>& tiles, Rng& rng, int samples) {
  CHECK(std::abs(total_volume(tiles) - volume(z)) <= 1e-8 * volume(z));
  for (std::size_t a = 0; a < tiles.size(); ++a) {
    const Zonotope sa(tiles[a].center(), tiles[a].generators() * (1.0 - 1e-6));
    for (std::size_t b = a + 1; b < tiles.size(); ++b) {
      const Zonotope sb(tiles[b].center(), tiles[b].generators() * (1.0 - 1e-6));
      CHECK(zonotopes_disjoint(sa, sb));
    }
  }
  int misses = 0;
  for (int i = 0; i < samples; ++i) {
    if (!covered(tiles, sample_uniform(z, rng))) ++misses;
  }
  CHECK(misses == 0);
}

}  // namespace

TEST_CASE("tiling matrix of the worked example") {
  const TilingMatrix t = tile(example_zonotope());
  IntMat expect(3, 4);
  expect << 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, 0;
  CHECK(t.entries == expect);
  const std::vector<int> identity = {0, 1, 2, 3};
  CHECK(t.permutation == identity);

  const std::vector<Zonotope> tiles = tiles_from_matrix(t);
  REQUIRE(tiles.size() == 3);
  CHECK(max_abs_diff(tiles[0].center(), vec({3, 3, 2})) <= 1e-12);
  CHECK(max_abs_diff(tiles[0].generators(), Mat::Identity(3, 3)) <= 1e-12);
  CHECK(max_abs_diff(tiles[1].center(), vec({4, 5, 2})) <= 1e-12);
  CHECK(max_abs_diff(tiles[1].generators(), cols({{1, 0, 0}, {1, 1, 0}, {0, 0, 1}})) <= 1e-12);
  CHECK(max_abs_diff(tiles[2].center(), vec({5, 4, 2})) <= 1e-12);
  CHECK(max_abs_diff(tiles[2].generators(), cols({{0, 1, 0}, {1, 1, 0}, {0, 0, 1}})) <= 1e-12);
  for (const Zonotope& z : tiles) CHECK(volume(z) == doctest::Approx(8.0));
}

TEST_CASE("generator order normalization") {
  const Zonotope ok = example_zonotope();
  CHECK(normalize_generator_order(ok).second == std::vector<int>{0, 1, 2, 3});
  // Last two columns parallel: pivots must move to the end.
  const Zonotope bad(vec({0, 0}), cols({{1, 0}, {0, 1}, {1, 1}, {2, 2}}));
  const auto [z, perm] = normalize_generator_order(bad);
  CHECK(numeric_rank(z.generators().rightCols(2)) == 2);
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2, 3});
  CHECK_THROWS_AS((void)normalize_generator_order(Zonotope(vec({0, 0}), cols({{1, 1}, {2, 2}}))),
                  NotFullDimensional);

  Rng rng(1);
  check_tiling(bad, tiles_from_matrix(tile(bad)), rng, 500);
}

TEST_CASE("trivial tilings") {
  const Zonotope box(vec({1, 2}), cols({{1, 0}, {0, 1}}));
  const std::vector<Zonotope> tiles = tiles_from_matrix(tile(box));
  REQUIRE(tiles.size() == 1);
  CHECK(max_abs_diff(tiles[0].center(), box.center()) == 0.0);
  TilingMatrix empty;
  empty.base = box;
  empty.entries.resize(0, 2);
  empty.permutation = {0, 1};
  CHECK(tiles_from_matrix(empty).empty());
}

TEST_CASE("random tilings conserve volume and cover the zonotope") {
  Rng rng(123);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 3;
    const int p = n + 1 + trial % 3;
    const Zonotope z = random_zonotope(n, p, rng);
    check_tiling(z, tiles_from_matrix(tile(z)), rng, 300);
  }
}

TEST_CASE("early termination still tiles") {
  Rng rng(31);
  const Zonotope z = random_zonotope(3, 6, rng);
  std::size_t previous = 0;
  for (int j = 0; j <= 3; ++j) {
    const std::vector<Zonotope> tiles = tiles_from_matrix(tile(z, j));
    CHECK(tiles.size() > previous);
    previous = tiles.size();
    check_tiling(z, tiles, rng, 200);
    CHECK(static_cast<int>(tiles.back().num_generators()) == 6 - j);
  }
  CHECK(tile(z, 3).entries == tile(z).entries);
}

TEST_CASE("parallelotope grid") {
  const Zonotope p(vec({0, 0}), cols({{2, 0}, {1, 1}}));
  const std::vector<Zonotope> cells = split_parallelotope_grid(p, 3);
  CHECK(cells.size() == 9);
  Rng rng(2);
  check_tiling(p, cells, rng, 300);
  const std::vector<Zonotope> uneven = split_parallelotope_grid(p, std::vector<int>{1, 4});
  CHECK(uneven.size() == 4);
  check_tiling(p, uneven, rng, 300);
  CHECK(split_parallelotope_grid(p, 1).size() == 1);
}

TEST_CASE("refined facets stay in the facet and cover it") {
  Rng rng(77);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 3;
    const Zonotope z = random_zonotope(n, n + 2, rng);
    const Boundary b = extract_boundary(z);
    for (int budget : {1, 4, 9}) {
      const Facet& f = b.facets[static_cast<std::size_t>(trial) % b.facets.size()];
      const std::vector<Zonotope> pieces = refine_facet(f, budget);
      CHECK(static_cast<int>(pieces.size()) <= std::max(budget, 1));
      double area = 0.0;
      for (const Zonotope& piece : pieces) {
        CHECK(f.normal.dot(piece.center()) == doctest::Approx(f.normal.dot(f.zonotope.center())).epsilon(1e-10));
        CHECK((f.normal.transpose() * piece.generators()).cwiseAbs().maxCoeff() < 1e-9);
        area += measure(piece, n - 1);
        for (const Vec& v : sign_points(piece)) CHECK(contains_point(f.zonotope, v, 1e-7));
      }
      CHECK(area == doctest::Approx(measure(f.zonotope, n - 1)).epsilon(1e-8));
    }
  }
}

TEST_CASE("boundary refinement respects the budget roughly and keeps all facets") {
  const Zonotope box(vec({0, 0, 0}), Mat::Identity(3, 3));
  CHECK(refine_boundary(box, 1).size() == 6);
  const std::vector<Zonotope> pieces = refine_boundary(box, 24);
  CHECK(pieces.size() == 24);
  double area = 0.0;
  for (const Zonotope& p : pieces) area += measure(p, 2);
  CHECK(area == doctest::Approx(24.0));
  // A degenerate set is its own boundary.
  const Zonotope flat(vec({0, 0}), cols({{1, 1}}));
  CHECK(refine_boundary(flat, 10).size() == 1);
}

TEST_CASE("tiled uniform sampler matches rejection sampling") {
  const Zonotope z(vec({0.5, -1}), cols({{1, 0}, {0, 1}, {1, 1}, {-0.5, 1}}));
  const UniformSampler draw(z);
  CHECK(draw.tiled());
  const Box hull = interval_hull(z);
  auto cell = [&](const Vec& x) {
    const int i = std::min(3, static_cast<int>(4 * (x(0) - hull.lower(0)) / (hull.upper(0) - hull.lower(0))));
    const int j = std::min(3, static_cast<int>(4 * (x(1) - hull.lower(1)) / (hull.upper(1) - hull.lower(1))));
    return 4 * i + j;
  };
  const int count = 40000;
  std::vector<double> a(16, 0.0), b(16, 0.0);
  Rng r1(1), r2(2);
  for (int k = 0; k < count; ++k) {
    const Vec x = draw(r1);
    REQUIRE(contains_point(z, x, 1e-9));
    a[static_cast<std::size_t>(cell(x))] += 1.0 / count;
    b[static_cast<std::size_t>(cell(sample_uniform(z, r2)))] += 1.0 / count;
  }
  for (int c = 0; c < 16; ++c) CHECK(std::abs(a[static_cast<std::size_t>(c)] - b[static_cast<std::size_t>(c)]) < 0.01);

  const Zonotope par(vec({0, 0, 0}), cols({{1, 0, 0}, {1, 1, 0}, {0, 0, 2}}));
  const UniformSampler direct(par);
  CHECK_FALSE(direct.tiled());
  Rng r3(3);
  for (int k = 0; k < 100; ++k) CHECK(contains_point(par, direct(r3), 1e-9));
}
