#pragma once

#include <doctest.h>

#include <vector>

#include "zonoreach/numeric.hpp"
#include "zonoreach/zonotope.hpp"

namespace zonoreach::test {

inline Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Matrix from a list of columns.
inline Mat cols(std::initializer_list<std::initializer_list<double>> columns) {
  const auto p = static_cast<Eigen::Index>(columns.size());
  const auto n = p == 0 ? 0 : static_cast<Eigen::Index>(columns.begin()->size());
  Mat m(n, p);
  Eigen::Index j = 0;
  for (const auto& c : columns) m.col(j++) = vec(c);
  return m;
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

// Random full-rank zonotope with entries in [-1, 1]; rank repaired by redrawing.
inline Zonotope random_zonotope(int n, int p, Rng& rng) {
  while (true) {
    Mat g(n, p);
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = 2.0 * uniform01(rng) - 1.0;
    if (numeric_rank(g.rightCols(n)) < n) continue;
    Vec c(n);
    for (int i = 0; i < n; ++i) c(i) = 4.0 * uniform01(rng) - 2.0;
    return Zonotope(c, g);
  }
}

// Every vertex candidate c + G s with s in {-1, 1}^p.
inline std::vector<Vec> sign_points(const Zonotope& z) {
  std::vector<Vec> out;
  const int p = static_cast<int>(z.num_generators());
  for (long mask = 0; mask < (1L << p); ++mask) {
    Vec x = z.center();
    for (int j = 0; j < p; ++j) x += ((mask >> j) & 1 ? 1.0 : -1.0) * z.generator(j);
    out.push_back(x);
  }
  return out;
}

}  // namespace zonoreach::test
