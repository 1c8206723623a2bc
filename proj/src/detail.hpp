#pragma once

#include <vector>

#include "zonoreach/numeric.hpp"

namespace zonoreach::detail {

// Visits every k-subset of {0..p-1} in lexicographic order.
template <typename F>
void for_each_subset(int p, int k, F&& visit) {
  if (k > p || k < 0) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == p - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

inline Mat select_columns(const Mat& g, const std::vector<int>& idx) {
  Mat out(g.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = g.col(idx[j]);
  return out;
}

// Hadamard bound on any minor built from these columns.
inline double column_norm_product(const Mat& m) {
  double scale = 1.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) scale *= std::max(m.col(j).norm(), 1e-300);
  return scale;
}

}  // namespace zonoreach::detail
