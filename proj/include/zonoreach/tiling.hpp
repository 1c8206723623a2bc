#pragma once

#include <utility>
#include <vector>

#include "zonoreach/boundary.hpp"
#include "zonoreach/zonotope.hpp"

namespace zonoreach {

// Rows encode parallelotope tiles over the permuted generators of `base`:
// column k of `entries` refers to base.generator(permutation[k]).
struct TilingMatrix {
  IntMat entries;
  Zonotope base;
  std::vector<int> permutation;

  [[nodiscard]] Eigen::Index rows() const { return entries.rows(); }
};

// Reorders generators so the last n columns are linearly independent. Identity when they already
// are; otherwise the pivot columns of a column-pivoted QR are moved to the end, keeping the
// relative order inside both groups. Returns the reordered zonotope and perm (new k -> old index).
[[nodiscard]] std::pair<Zonotope, std::vector<int>> normalize_generator_order(const Zonotope& z);

// Parallelotope tiling of a full-dimensional zonotope. With max_iterations >= 0 the elimination
// stops early; the last row then encodes the untiled remainder.
[[nodiscard]] TilingMatrix tile(const Zonotope& z, int max_iterations = -1);

[[nodiscard]] std::vector<Zonotope> tiles_from_matrix(const TilingMatrix& t);

// Uniform k_1 x ... x k_n grid of sub-parallelotopes; ks has one entry per generator.
[[nodiscard]] std::vector<Zonotope> split_parallelotope_grid(const Zonotope& p, const std::vector<int>& ks);
[[nodiscard]] std::vector<Zonotope> split_parallelotope_grid(const Zonotope& p, int k);

// At most `budget` pieces with disjoint interiors covering a full-dimensional z (dimension taken
// from z itself): tiling first, grid splits of parallelotope pieces with what is left.
[[nodiscard]] std::vector<Zonotope> refine_full_dimensional(const Zonotope& z, int budget);

// Splits an (n-1)-dimensional facet into at most `budget` pieces whose union is the facet.
[[nodiscard]] std::vector<Zonotope> refine_facet(const Facet& f, int budget);

// Facet pieces covering the boundary of z, budget shared by (n-1)-measure. A degenerate z is
// its own boundary and is returned unchanged.
[[nodiscard]] std::vector<Zonotope> refine_boundary(const Zonotope& z, int budget,
                                                    ExecPolicy policy = ExecPolicy::Parallel);

// Exact uniform sampling: a parallelotope directly, other full-dimensional zonotopes through a
// volume-weighted choice of tile. Falls back to rejection from the interval hull when the tiling
// is too large to enumerate or the set is flat.
class UniformSampler {
 public:
  explicit UniformSampler(const Zonotope& z, long max_tiles = 20000);
  [[nodiscard]] Vec operator()(Rng& rng) const;
  [[nodiscard]] bool tiled() const { return !cumulative_.empty(); }

 private:
  Zonotope z_;
  std::vector<Zonotope> tiles_;
  std::vector<double> cumulative_;
  bool direct_ = false;
};

}  // namespace zonoreach
