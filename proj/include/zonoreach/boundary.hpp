#pragma once

#include <vector>

#include "zonoreach/numeric.hpp"
#include "zonoreach/parallel.hpp"
#include "zonoreach/zonotope.hpp"

namespace zonoreach {

// Row-per-facet encoding over the generators of `base`: 0 means the generator spans the facet,
// -1/+1 means it is subtracted/added to obtain the facet center.
struct BoundaryMatrix {
  IntMat entries;
  Zonotope base;

  [[nodiscard]] Eigen::Index rows() const { return entries.rows(); }
};

struct Facet {
  Zonotope zonotope;
  Vec normal;          // outward, +-cross_product of the spanning generators
  Eigen::Index row = 0;  // index into the boundary matrix
};

struct Boundary {
  std::vector<Facet> facets;
  BoundaryMatrix matrix;
};

// All (n-1)-subsets of the columns of g with rank n-1, lexicographic, one per distinct hyperplane.
[[nodiscard]] std::vector<std::vector<int>> hyperplane_bases(const Mat& g,
                                                             ExecPolicy policy = ExecPolicy::Parallel);

// Exact facet enumeration. Zero generators are dropped first (with a warning on stderr), so
// `matrix.base` may have fewer columns than z. Throws NotFullDimensional if rank(G) < n.
[[nodiscard]] Boundary extract_boundary(const Zonotope& z, ExecPolicy policy = ExecPolicy::Parallel);

// Center c + sum_j row(j) g_j, generators = columns where row(j) == 0. No rank check.
[[nodiscard]] Zonotope decode_row(const Zonotope& base, const Eigen::Ref<const Eigen::RowVectorXi>& row);

// decode_row restricted to rows describing a facet: the zero columns must have rank n-1
// (a degenerate base only admits the all-zero row, which yields the base itself).
[[nodiscard]] Zonotope facet_from_row(const Zonotope& base, const Eigen::Ref<const Eigen::RowVectorXi>& row);

// The 2n facets <c +- g_i, G without column i>; first the + side for i = 1..n, then the - side.
[[nodiscard]] std::vector<Facet> parallelotope_boundary(const Zonotope& p);

}  // namespace zonoreach
