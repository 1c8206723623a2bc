#include "zonoreach/numeric.hpp"

namespace zonoreach {

NumericConfig& numeric_config() {
  static NumericConfig config;
  return config;
}

double determinant(const Mat& m) {
  if (m.rows() == 0) return 1.0;
  return m.partialPivLu().determinant();
}

int numeric_rank(const Mat& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::ColPivHouseholderQR<Mat> qr(m);
  qr.setThreshold(tol > 0.0 ? tol : numeric_config().relative_zero);
  return static_cast<int>(qr.rank());
}

Vec signed_minors(const Mat& m) {
  const Eigen::Index n = m.rows();
  Vec v(n);
  Mat minor(n - 1, n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index r = 0, k = 0; r < n; ++r) {
      if (r == i) continue;
      minor.row(k++) = m.row(r);
    }
    v(i) = ((i % 2 == 0) ? 1.0 : -1.0) * determinant(minor);
  }
  return v;
}

}  // namespace zonoreach
