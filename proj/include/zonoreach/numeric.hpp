#pragma once

#include <Eigen/Dense>

namespace zonoreach {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using IntMat = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Thresholds that decide when a floating-point quantity counts as zero.
// A value v computed from operands of magnitude s is zero when |v| <= relative_zero * s.
struct NumericConfig {
  double relative_zero = 1e-9;
  double lp_feasibility = 1e-9;
};

// Process-wide settings; read by every geometric routine that needs a rank or sign decision.
NumericConfig& numeric_config();

[[nodiscard]] inline bool is_zero(double value, double scale) {
  return std::abs(value) <= numeric_config().relative_zero * std::max(scale, 1e-300);
}

// Determinant via LU with partial pivoting.
[[nodiscard]] double determinant(const Mat& m);

// Numeric rank through column-pivoted QR; tol is relative to the largest pivot.
[[nodiscard]] int numeric_rank(const Mat& m, double tol = -1.0);

}  // namespace zonoreach

namespace zonoreach {

// Signed (n-1)-minors of an n x (n-1) matrix without any rank checking.
[[nodiscard]] Vec signed_minors(const Mat& m);

}  // namespace zonoreach
