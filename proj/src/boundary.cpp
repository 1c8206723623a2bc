#include "zonoreach/boundary.hpp"

#include <cmath>
#include <iostream>
#include <map>
#include <string>

#include "detail.hpp"
#include "zonoreach/errors.hpp"
#include "zonoreach/kernels.hpp"

namespace zonoreach {

namespace {

// Unit normal with its first nonzero component made positive, quantized so that
// numerically equal hyperplanes share a key.
std::vector<long long> normal_key(const Vec& unit) {
  Vec u = unit;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (std::abs(u(i)) > 1e-9) {
      if (u(i) < 0.0) u = -u;
      break;
    }
  }
  std::vector<long long> key(static_cast<std::size_t>(u.size()));
  for (Eigen::Index i = 0; i < u.size(); ++i) key[static_cast<std::size_t>(i)] = std::llround(u(i) * 1e9);
  return key;
}

int sign_of(double x) { return x > 0.0 ? 1 : -1; }

}  // namespace

std::vector<std::vector<int>> hyperplane_bases(const Mat& g, ExecPolicy policy) {
  const int n = static_cast<int>(g.rows());
  const int p = static_cast<int>(g.cols());
  std::vector<std::vector<int>> subsets;
  detail::for_each_subset(p, n - 1, [&](const std::vector<int>& idx) { subsets.push_back(idx); });

  const std::vector<kernels::HyperplaneCandidate> candidates = kernels::hyperplane_candidates(g, subsets, policy);

  std::map<std::vector<long long>, std::size_t> seen;
  std::vector<std::vector<int>> bases;
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    if (!candidates[s].full_rank) continue;
    if (seen.emplace(normal_key(candidates[s].unit_normal), s).second) bases.push_back(subsets[s]);
  }
  return bases;
}

Zonotope decode_row(const Zonotope& base, const Eigen::Ref<const Eigen::RowVectorXi>& row) {
  if (row.size() != base.num_generators()) {
    throw DimensionMismatch("decode_row: row has " + std::to_string(row.size()) + " entries, base has " +
                            std::to_string(base.num_generators()) + " generators");
  }
  Vec c = base.center();
  std::vector<int> span;
  for (Eigen::Index j = 0; j < row.size(); ++j) {
    const int e = row(j);
    if (e == 0) {
      span.push_back(static_cast<int>(j));
    } else if (e == 1 || e == -1) {
      c += static_cast<double>(e) * base.generator(j);
    } else {
      throw Error("decode_row: entries must be -1, 0 or 1");
    }
  }
  return Zonotope(std::move(c), detail::select_columns(base.generators(), span));
}

Zonotope facet_from_row(const Zonotope& base, const Eigen::Ref<const Eigen::RowVectorXi>& row) {
  const int n = static_cast<int>(base.dim());
  Zonotope f = decode_row(base, row);
  if (numeric_rank(base.generators()) < n) {
    if ((row.array() != 0).any()) throw RankDeficient("facet_from_row: degenerate base only has the all-zero row");
    return f;
  }
  if (numeric_rank(f.generators()) != n - 1) {
    throw RankDeficient("facet_from_row: spanning columns do not have rank n-1");
  }
  return f;
}

Boundary extract_boundary(const Zonotope& z, ExecPolicy policy) {
  const Zonotope base = z.without_zero_generators();
  if (base.num_generators() < z.num_generators()) {
    std::cerr << "warning: dropped " << (z.num_generators() - base.num_generators())
              << " zero-length generator(s) before boundary extraction\n";
  }
  const Eigen::Index n = base.dim();
  const Eigen::Index p = base.num_generators();
  if (numeric_rank(base.generators()) < n) throw NotFullDimensional("extract_boundary: rank(G) < n");

  const std::vector<std::vector<int>> bases = hyperplane_bases(base.generators(), policy);
  Boundary out;
  out.matrix.base = base;
  out.matrix.entries = IntMat::Zero(2 * static_cast<Eigen::Index>(bases.size()), p);
  out.facets.reserve(2 * bases.size());

  for (std::size_t b = 0; b < bases.size(); ++b) {
    const Vec v = cross_product(detail::select_columns(base.generators(), bases[b]));
    const Vec u = v.normalized();
    const Eigen::Index r1 = 2 * static_cast<Eigen::Index>(b);
    const Eigen::Index r2 = r1 + 1;
    for (Eigen::Index k = 0; k < p; ++k) {
      const double d = u.dot(base.generator(k));
      if (is_zero(d, base.generator(k).norm())) continue;
      out.matrix.entries(r1, k) = -sign_of(d);
      out.matrix.entries(r2, k) = sign_of(d);
    }
    out.facets.push_back(Facet{decode_row(base, out.matrix.entries.row(r1)), -v, r1});
    out.facets.push_back(Facet{decode_row(base, out.matrix.entries.row(r2)), v, r2});
  }
  return out;
}

std::vector<Facet> parallelotope_boundary(const Zonotope& p) {
  const Eigen::Index n = p.dim();
  if (p.num_generators() != n || numeric_rank(p.generators()) < n) {
    throw NotFullDimensional("parallelotope_boundary: expected n linearly independent generators");
  }
  std::vector<Facet> facets(static_cast<std::size_t>(2 * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<int> rest;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) rest.push_back(static_cast<int>(j));
    }
    const Mat span = detail::select_columns(p.generators(), rest);
    Vec v = cross_product(span);
    if (v.dot(p.generator(i)) < 0.0) v = -v;
    facets[static_cast<std::size_t>(i)] = Facet{Zonotope(p.center() + p.generator(i), span), v, i};
    facets[static_cast<std::size_t>(n + i)] = Facet{Zonotope(p.center() - p.generator(i), span), -v, n + i};
  }
  return facets;
}

}  // namespace zonoreach
