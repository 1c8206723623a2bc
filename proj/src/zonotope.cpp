#include "zonoreach/zonotope.hpp"

#include <cmath>
#include <string>

#include "zonoreach/errors.hpp"
#include "zonoreach/lp.hpp"
#include "detail.hpp"

namespace zonoreach {

namespace {

using detail::for_each_subset;
using detail::select_columns;

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) + " vs " +
                            std::to_string(b));
  }
}

}  // namespace

Box::Box(Vec lo, Vec hi) : lower(std::move(lo)), upper(std::move(hi)) {
  require_same_dim(lower.size(), upper.size(), "Box");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (lower(i) > upper(i)) throw Error("Box: lower > upper on axis " + std::to_string(i));
  }
}

bool Box::contains(const Vec& x, double tol) const {
  require_same_dim(dim(), x.size(), "Box::contains");
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) < lower(i) - tol || x(i) > upper(i) + tol) return false;
  }
  return true;
}

bool Box::contains(const Box& other) const {
  require_same_dim(dim(), other.dim(), "Box::contains");
  return (other.lower.array() >= lower.array()).all() && (other.upper.array() <= upper.array()).all();
}

Zonotope::Zonotope(Vec center, Mat generators) : center_(std::move(center)), generators_(std::move(generators)) {
  if (center_.size() < 1) throw Error("Zonotope: dimension must be at least 1");
  if (generators_.cols() == 0) generators_.resize(center_.size(), 0);
  require_same_dim(center_.size(), generators_.rows(), "Zonotope");
}

Zonotope Zonotope::point(const Vec& x) { return Zonotope(x, Mat(x.size(), 0)); }

Zonotope Zonotope::from_box(const Box& box) {
  return Zonotope(box.center(), Mat(box.radius().asDiagonal()));
}

Zonotope Zonotope::without_zero_generators() const {
  const double scale = generators_.cols() > 0 ? generators_.colwise().norm().maxCoeff() : 0.0;
  std::vector<int> keep;
  for (Eigen::Index j = 0; j < generators_.cols(); ++j) {
    const double norm = generators_.col(j).norm();
    if (norm > 0.0 && !is_zero(norm, scale)) keep.push_back(static_cast<int>(j));
  }
  return Zonotope(center_, select_columns(generators_, keep));
}

Vec cross_product(const Mat& m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n - 1) {
    throw DimensionMismatch("cross_product: expected " + std::to_string(n - 1) + " columns, got " +
                            std::to_string(m.cols()));
  }
  const Vec v = signed_minors(m);
  if (n > 1 && is_zero(v.norm(), detail::column_norm_product(m))) throw RankDeficient("cross_product: columns are linearly dependent");
  return v;
}

Zonotope linear_image(const Mat& a, const Zonotope& z) {
  require_same_dim(a.cols(), z.dim(), "linear_image");
  return Zonotope(a * z.center(), a * z.generators());
}

Zonotope minkowski_sum(const Zonotope& a, const Zonotope& b) {
  require_same_dim(a.dim(), b.dim(), "minkowski_sum");
  Mat g(a.dim(), a.num_generators() + b.num_generators());
  g << a.generators(), b.generators();
  return Zonotope(a.center() + b.center(), std::move(g));
}

Zonotope translate(const Zonotope& z, const Vec& offset) {
  require_same_dim(z.dim(), offset.size(), "translate");
  return Zonotope(z.center() + offset, z.generators());
}

double volume(const Zonotope& z) {
  const int n = static_cast<int>(z.dim());
  const int p = static_cast<int>(z.num_generators());
  if (p < n) return 0.0;
  double sum = 0.0;
  for_each_subset(p, n, [&](const std::vector<int>& idx) {
    sum += std::abs(determinant(select_columns(z.generators(), idx)));
  });
  return std::ldexp(sum, n);
}

double measure(const Zonotope& z, int k) {
  const int p = static_cast<int>(z.num_generators());
  if (k == 0) return 1.0;
  if (p < k) return 0.0;
  double sum = 0.0;
  for_each_subset(p, k, [&](const std::vector<int>& idx) {
    const Mat s = select_columns(z.generators(), idx);
    const double gram = determinant(s.transpose() * s);
    sum += std::sqrt(std::max(gram, 0.0));
  });
  return std::ldexp(sum, k);
}

double support(const Zonotope& z, const Vec& direction) {
  require_same_dim(z.dim(), direction.size(), "support");
  return direction.dot(z.center()) + (direction.transpose() * z.generators()).cwiseAbs().sum();
}

Box interval_hull(const Zonotope& z) {
  const Vec radius = z.generators().cwiseAbs().rowwise().sum();
  return Box(z.center() - radius, z.center() + radius);
}

bool contains_point(const Zonotope& z, const Vec& x, double tol) {
  require_same_dim(z.dim(), x.size(), "contains_point");
  const Eigen::Index p = z.num_generators();
  const Vec rhs = x - z.center();
  if (p == 0) return rhs.cwiseAbs().maxCoeff() <= tol;
  // Fast exact path for parallelotopes.
  if (p == z.dim()) {
    Eigen::PartialPivLU<Mat> lu(z.generators());
    if (std::abs(lu.determinant()) > 1e-12 * std::pow(z.generators().norm(), static_cast<double>(p))) {
      const Vec alpha = lu.solve(rhs);
      const double slack = (alpha.cwiseAbs().array() - 1.0).maxCoeff();
      if (slack <= 0.0) return true;
      // Far outside in coefficient space is decisive; near the edge let the LP decide.
      if (slack > 1e-6) return false;
    }
  }
  LinearProgram lp;
  lp.objective = Vec::Zero(p);
  lp.eq_matrix = z.generators();
  lp.eq_rhs = rhs;
  lp.var_lower = Vec::Constant(p, -1.0);
  lp.var_upper = Vec::Constant(p, 1.0);
  SolverOptions options;
  options.feasibility_tol = tol;
  return solve(lp, options).status != LpStatus::Infeasible;
}

Vec sample_point(const Zonotope& z, Rng& rng) {
  Vec alpha(z.num_generators());
  for (Eigen::Index j = 0; j < alpha.size(); ++j) alpha(j) = 2.0 * uniform01(rng) - 1.0;
  return z.center() + z.generators() * alpha;
}

Vec sample_uniform(const Zonotope& z, Rng& rng) {
  if (z.num_generators() == z.dim() && numeric_rank(z.generators()) == z.dim()) return sample_point(z, rng);
  const Box hull = interval_hull(z);
  Vec x(z.dim());
  for (int attempt = 0; attempt < 1'000'000; ++attempt) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = hull.lower(i) + uniform01(rng) * (hull.upper(i) - hull.lower(i));
    if (contains_point(z, x, 1e-12)) return x;
  }
  throw Error("sample_uniform: rejection sampling did not terminate (degenerate zonotope?)");
}

}  // namespace zonoreach
