#include "zonoreach/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "detail.hpp"
#include "zonoreach/errors.hpp"

namespace zonoreach {

namespace {

Zonotope permute_generators(const Zonotope& z, const std::vector<int>& perm) {
  return Zonotope(z.center(), detail::select_columns(z.generators(), perm));
}

bool is_parallelotope(const Zonotope& z) { return z.num_generators() == z.dim(); }

// Integer k with k^d <= budget, robust against pow rounding.
int grid_factor(int budget, int d) {
  if (budget < 1 || d < 1) return 1;
  int k = static_cast<int>(std::floor(std::pow(static_cast<double>(budget), 1.0 / d) + 1e-9));
  auto fits = [&](int kk) {
    double v = 1.0;
    for (int i = 0; i < d; ++i) v *= kk;
    return v <= budget;
  };
  while (k > 1 && !fits(k)) --k;
  while (fits(k + 1)) ++k;
  return std::max(k, 1);
}


}  // namespace

std::vector<Zonotope> refine_full_dimensional(const Zonotope& z, int budget) {
  const int d = static_cast<int>(z.dim());
  if (budget <= 1) return {z};
  if (is_parallelotope(z)) return split_parallelotope_grid(z, grid_factor(budget, d));

  const int p = static_cast<int>(z.num_generators());
  std::vector<Zonotope> pieces;
  for (int j = p - d; j >= 0; --j) {
    TilingMatrix t = tile(z, j);
    if (t.rows() <= budget) {
      pieces = tiles_from_matrix(t);
      break;
    }
  }

  // Keep tiling the largest non-parallelotope pieces while the count stays within budget.
  while (static_cast<int>(pieces.size()) < budget) {
    int best = -1;
    double best_volume = -1.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (is_parallelotope(pieces[i])) continue;
      const double v = volume(pieces[i]);
      if (v > best_volume) {
        best_volume = v;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) break;
    std::vector<Zonotope> sub = tiles_from_matrix(tile(pieces[static_cast<std::size_t>(best)]));
    if (static_cast<int>(pieces.size() + sub.size()) - 1 > budget) break;
    pieces.erase(pieces.begin() + best);
    pieces.insert(pieces.begin() + best, sub.begin(), sub.end());
  }

  const int k = grid_factor(budget / static_cast<int>(pieces.size()), d);
  if (k < 2) return pieces;
  std::vector<Zonotope> out;
  for (const Zonotope& piece : pieces) {
    if (!is_parallelotope(piece)) {
      out.push_back(piece);
      continue;
    }
    std::vector<Zonotope> cells = split_parallelotope_grid(piece, k);
    out.insert(out.end(), cells.begin(), cells.end());
  }
  return out;
}

std::pair<Zonotope, std::vector<int>> normalize_generator_order(const Zonotope& z) {
  const int n = static_cast<int>(z.dim());
  const int p = static_cast<int>(z.num_generators());
  if (p < n || numeric_rank(z.generators()) < n) {
    throw NotFullDimensional("normalize_generator_order: rank(G) < n");
  }
  std::vector<int> perm(static_cast<std::size_t>(p));
  std::iota(perm.begin(), perm.end(), 0);
  if (numeric_rank(z.generators().rightCols(n)) == n) return {z, perm};

  Eigen::ColPivHouseholderQR<Mat> qr(z.generators());
  std::vector<bool> pivot(static_cast<std::size_t>(p), false);
  for (int i = 0; i < n; ++i) pivot[static_cast<std::size_t>(qr.colsPermutation().indices()(i))] = true;
  perm.clear();
  for (int j = 0; j < p; ++j) {
    if (!pivot[static_cast<std::size_t>(j)]) perm.push_back(j);
  }
  for (int j = 0; j < p; ++j) {
    if (pivot[static_cast<std::size_t>(j)]) perm.push_back(j);
  }
  return {permute_generators(z, perm), perm};
}

TilingMatrix tile(const Zonotope& z, int max_iterations) {
  const Zonotope clean = z.without_zero_generators();
  auto [ordered, perm] = normalize_generator_order(clean);
  const int n = static_cast<int>(ordered.dim());
  const int p = static_cast<int>(ordered.num_generators());
  const int iterations = max_iterations < 0 ? p - n : std::min(max_iterations, p - n);

  IntMat b = extract_boundary(ordered).matrix.entries;
  std::vector<Eigen::RowVectorXi> t_rows;
  for (int j = 0; j < iterations; ++j) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      const int e = b(i, j);
      if (e == 0) continue;
      if (e == -1) {
        Eigen::RowVectorXi v = b.row(i);
        v(j) = 0;
        t_rows.push_back(v);
        b(i, j) = 1;
      }
      keep.push_back(i);
    }
    IntMat next(static_cast<Eigen::Index>(keep.size()), p);
    for (std::size_t r = 0; r < keep.size(); ++r) next.row(static_cast<Eigen::Index>(r)) = b.row(keep[r]);
    b = std::move(next);
    if (b.rows() == 0) throw Error("tile: boundary matrix emptied at column " + std::to_string(j));
  }
  Eigen::RowVectorXi last = b.row(b.rows() - 1);
  for (int j = iterations; j < p; ++j) last(j) = 0;
  t_rows.push_back(last);

  TilingMatrix out;
  out.entries.resize(static_cast<Eigen::Index>(t_rows.size()), p);
  for (std::size_t r = 0; r < t_rows.size(); ++r) out.entries.row(static_cast<Eigen::Index>(r)) = t_rows[r];
  out.base = clean;
  out.permutation = std::move(perm);
  return out;
}

std::vector<Zonotope> tiles_from_matrix(const TilingMatrix& t) {
  const Eigen::Index p = t.base.num_generators();
  if (t.entries.cols() != p || static_cast<Eigen::Index>(t.permutation.size()) != p) {
    throw DimensionMismatch("tiles_from_matrix: matrix, base and permutation disagree");
  }
  std::vector<Zonotope> tiles;
  tiles.reserve(static_cast<std::size_t>(t.rows()));
  Eigen::RowVectorXi original(p);
  for (Eigen::Index r = 0; r < t.rows(); ++r) {
    for (Eigen::Index k = 0; k < p; ++k) original(t.permutation[static_cast<std::size_t>(k)]) = t.entries(r, k);
    tiles.push_back(decode_row(t.base, original));
  }
  return tiles;
}

std::vector<Zonotope> split_parallelotope_grid(const Zonotope& p, const std::vector<int>& ks) {
  const Eigen::Index n = p.num_generators();
  if (static_cast<Eigen::Index>(ks.size()) != n) {
    throw DimensionMismatch("split_parallelotope_grid: need one factor per generator");
  }
  Mat g = p.generators();
  std::size_t total = 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int k = ks[static_cast<std::size_t>(i)];
    if (k < 1) throw Error("split_parallelotope_grid: factors must be positive");
    g.col(i) /= k;
    total *= static_cast<std::size_t>(k);
  }
  std::vector<Zonotope> cells;
  cells.reserve(total);
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  for (std::size_t cell = 0; cell < total; ++cell) {
    Vec c = p.center();
    for (Eigen::Index i = 0; i < n; ++i) {
      const int k = ks[static_cast<std::size_t>(i)];
      const double offset = static_cast<double>(2 * idx[static_cast<std::size_t>(i)] + 1 - k) / k;
      c += offset * p.generator(i);
    }
    cells.emplace_back(std::move(c), g);
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      if (++idx[static_cast<std::size_t>(i)] < ks[static_cast<std::size_t>(i)]) break;
      idx[static_cast<std::size_t>(i)] = 0;
    }
  }
  return cells;
}

std::vector<Zonotope> split_parallelotope_grid(const Zonotope& p, int k) {
  return split_parallelotope_grid(p, std::vector<int>(static_cast<std::size_t>(p.num_generators()), k));
}

std::vector<Zonotope> refine_facet(const Facet& f, int budget) {
  const Zonotope& facet = f.zonotope;
  const int n = static_cast<int>(facet.dim());
  if (n == 1 || budget <= 1) return {facet};

  // First n-1 independent generators, scanned in column order.
  std::vector<int> chosen;
  Mat span(n, 0);
  for (Eigen::Index j = 0; j < facet.num_generators() && static_cast<int>(chosen.size()) < n - 1; ++j) {
    Mat trial(n, span.cols() + 1);
    trial << span, facet.generator(j);
    if (numeric_rank(trial) == trial.cols()) {
      span = std::move(trial);
      chosen.push_back(static_cast<int>(j));
    }
  }
  if (static_cast<int>(chosen.size()) != n - 1) throw RankDeficient("refine_facet: facet generators have rank < n-1");

  const Vec normal = cross_product(span);
  const Mat to_sub = span.transpose();
  const Zonotope reduced(to_sub * facet.center(), to_sub * facet.generators());

  Mat lift(n, n);
  lift << to_sub, normal.transpose();
  const Eigen::PartialPivLU<Mat> lu(lift);
  const double offset = normal.dot(facet.center());

  std::vector<Zonotope> out;
  for (const Zonotope& piece : refine_full_dimensional(reduced, budget)) {
    Vec rc(n);
    rc << piece.center(), offset;
    Mat rg = Mat::Zero(n, piece.num_generators());
    rg.topRows(n - 1) = piece.generators();
    out.emplace_back(lu.solve(rc), lu.solve(rg));
  }
  return out;
}

std::vector<Zonotope> refine_boundary(const Zonotope& z, int budget, ExecPolicy policy) {
  const int n = static_cast<int>(z.dim());
  if (numeric_rank(z.generators()) < n) return {z};
  const Boundary boundary = extract_boundary(z, policy);
  std::vector<Zonotope> out;
  if (budget <= static_cast<int>(boundary.facets.size())) {
    for (const Facet& f : boundary.facets) out.push_back(f.zonotope);
    return out;
  }
  std::vector<double> measures;
  double total = 0.0;
  for (const Facet& f : boundary.facets) {
    measures.push_back(measure(f.zonotope, n - 1));
    total += measures.back();
  }
  for (std::size_t i = 0; i < boundary.facets.size(); ++i) {
    const int share = total > 0.0 ? static_cast<int>(std::floor(budget * measures[i] / total)) : 1;
    std::vector<Zonotope> pieces = refine_facet(boundary.facets[i], std::max(1, share));
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return out;
}

UniformSampler::UniformSampler(const Zonotope& z, long max_tiles) : z_(z.without_zero_generators()) {
  const Eigen::Index n = z_.dim();
  const Eigen::Index p = z_.num_generators();
  if (p < n || numeric_rank(z_.generators()) < n) return;
  if (p == n) {
    direct_ = true;
    return;
  }
  // Boundary extraction visits C(p, n-1) subsets; the tiling has C(p, n) tiles.
  double subsets = 1.0;
  double tiles = 1.0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    tiles = tiles * static_cast<double>(p - n + i) / static_cast<double>(i);
    if (i < n) subsets = subsets * static_cast<double>(p - n + 1 + i) / static_cast<double>(i);
  }
  if (tiles > static_cast<double>(max_tiles) || subsets > 10.0 * static_cast<double>(max_tiles)) return;
  tiles_ = tiles_from_matrix(tile(z_));
  double total = 0.0;
  for (const Zonotope& t : tiles_) {
    total += std::abs(t.generators().determinant());
    cumulative_.push_back(total);
  }
}

Vec UniformSampler::operator()(Rng& rng) const {
  if (direct_) return sample_point(z_, rng);
  if (cumulative_.empty()) return sample_uniform(z_, rng);
  const double u = uniform01(rng) * cumulative_.back();
  const auto k = static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), u) -
                                          cumulative_.begin());
  return sample_point(tiles_[std::min(k, tiles_.size() - 1)], rng);
}

}  // namespace zonoreach
