#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "zonoreach/numeric.hpp"

namespace zonoreach {

// Axis-aligned box [lower, upper].
struct Box {
  Vec lower;
  Vec upper;

  Box() = default;
  Box(Vec lo, Vec hi);

  [[nodiscard]] Eigen::Index dim() const { return lower.size(); }
  [[nodiscard]] Vec center() const { return 0.5 * (lower + upper); }
  [[nodiscard]] Vec radius() const { return 0.5 * (upper - lower); }
  [[nodiscard]] Vec width() const { return upper - lower; }
  [[nodiscard]] bool contains(const Vec& x, double tol = 0.0) const;
  [[nodiscard]] bool contains(const Box& other) const;
};

// The set { center + generators * alpha : alpha in [-1,1]^p }.
class Zonotope {
 public:
  Zonotope() = default;
  Zonotope(Vec center, Mat generators);
  static Zonotope point(const Vec& x);
  static Zonotope from_box(const Box& box);

  [[nodiscard]] const Vec& center() const { return center_; }
  [[nodiscard]] const Mat& generators() const { return generators_; }
  [[nodiscard]] Eigen::Index dim() const { return center_.size(); }
  [[nodiscard]] Eigen::Index num_generators() const { return generators_.cols(); }
  [[nodiscard]] auto generator(Eigen::Index j) const { return generators_.col(j); }

  // Generators with norm at or below the zero threshold removed.
  [[nodiscard]] Zonotope without_zero_generators() const;

 private:
  Vec center_;
  Mat generators_;
};

// Signed (n-1)-minors of an n x (n-1) matrix; throws RankDeficient when all vanish.
[[nodiscard]] Vec cross_product(const Mat& m);

[[nodiscard]] Zonotope linear_image(const Mat& a, const Zonotope& z);
[[nodiscard]] Zonotope minkowski_sum(const Zonotope& a, const Zonotope& b);
[[nodiscard]] Zonotope translate(const Zonotope& z, const Vec& offset);

// Shephard's formula: 2^n * sum over n-subsets of generators of |det|.
[[nodiscard]] double volume(const Zonotope& z);

// k-dimensional measure of a zonotope whose generators span a k-dimensional subspace
// (Gram-determinant form of Shephard's formula).
[[nodiscard]] double measure(const Zonotope& z, int k);

[[nodiscard]] double support(const Zonotope& z, const Vec& direction);
[[nodiscard]] Box interval_hull(const Zonotope& z);

// LP feasibility of c + G alpha = x with alpha in [-1,1]^p.
[[nodiscard]] bool contains_point(const Zonotope& z, const Vec& x, double tol = 1e-9);

// Seedable 64-bit generator used wherever sampling must be reproducible.
using Rng = std::mt19937_64;

// Uniform double in [0,1) built from the top 53 bits, identical on every platform.
[[nodiscard]] inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// c + G alpha with alpha uniform on [-1,1]^p.
[[nodiscard]] Vec sample_point(const Zonotope& z, Rng& rng);

// Uniform sample of the set itself: direct for a parallelotope, rejection from the interval hull
// otherwise (see UniformSampler for the tiled version).
[[nodiscard]] Vec sample_uniform(const Zonotope& z, Rng& rng);

}  // namespace zonoreach
