#include "zonoreach/outer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "zonoreach/errors.hpp"

namespace zonoreach {

namespace {

struct SingleStep {
  Zonotope result;
  double remainder_width = 0.0;  // largest width of the remainder box
};

double inf_norm(const Mat& m) { return m.rows() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff(); }

// Tail of the exponential series past order k: x^{k+1}/(k+1)! e^x.
double exp_tail(double x, int k) {
  double term = 1.0;
  for (int i = 1; i <= k + 1; ++i) term *= x / i;
  return term * std::exp(x);
}

SingleStep single_step(const System& s, const Zonotope& z, double h, const OuterParams& params) {
  const Eigen::Index n = z.dim();
  const Box y = a_priori_enclosure(s, z, h, params);
  const Vec zs = y.center();
  const Vec rad = y.radius();

  const Vec b = s.eval(zs);
  const Mat j = s.jacobian(zs);
  const std::vector<Mat> hess = s.hessian_bound(y);
  Vec r(n);
  for (Eigen::Index i = 0; i < n; ++i) r(i) = 0.5 * rad.dot(hess[static_cast<std::size_t>(i)] * rad);

  // Truncated series for e^{Jh} and Gamma(h) = int_0^h e^{Js} ds.
  const Mat jh = j * h;
  Mat term = Mat::Identity(n, n);
  Mat e = Mat::Identity(n, n);
  Mat gamma = Mat::Identity(n, n) * h;
  for (int i = 1; i <= params.taylor_order; ++i) {
    term = term * jh / i;
    e += term;
    gamma += term * (h / (i + 1));
  }
  const double norm_jh = inf_norm(jh);
  const double tail = exp_tail(norm_jh, params.taylor_order);

  const Box hull = interval_hull(z);
  const double y0_norm = std::max((hull.upper - zs).cwiseAbs().maxCoeff(), (hull.lower - zs).cwiseAbs().maxCoeff());
  const double r_norm = r.size() > 0 ? r.maxCoeff() : 0.0;

  const Vec center = zs + e * (z.center() - zs) + gamma * b;
  const Mat g = e * z.generators();

  const double uniform = tail * y0_norm + h * tail * b.cwiseAbs().maxCoeff() + h * std::expm1(norm_jh) * r_norm;
  Vec box = (h * r).array() + uniform;
  // Rounding slack for the dense products above.
  box += 1e-13 * (center.cwiseAbs() + g.cwiseAbs().rowwise().sum() + Vec::Ones(n));

  Mat full(n, g.cols() + n);
  full << g, Mat(box.asDiagonal());
  SingleStep out{Zonotope(center, full).without_zero_generators(), 2.0 * (h * r).maxCoeff()};
  return out;
}

Zonotope step_with_splits(const System& s, const Zonotope& z, double h, const OuterParams& params, int depth) {
  bool split = false;
  SingleStep step;
  try {
    step = single_step(s, z, h, params);
    const double width = interval_hull(z).width().maxCoeff();
    split = width > 0.0 && step.remainder_width > 0.1 * width;
  } catch (const EnclosureFailure&) {
    if (depth >= params.max_step_splits) throw;
    split = true;
  } catch (const DomainError&) {
    if (depth >= params.max_step_splits) throw EnclosureFailure("outer_step: interval domain error at every split level");
    split = true;
  }
  if (!split || depth >= params.max_step_splits) return step.result;
  const Zonotope half = step_with_splits(s, z, 0.5 * h, params, depth + 1);
  const Zonotope full = step_with_splits(s, half, 0.5 * h, params, depth + 1);
  return reduce_outer(full, static_cast<int>(z.num_generators() + z.dim()));
}

}  // namespace

Box a_priori_enclosure(const System& s, const Zonotope& z, double h, const OuterParams& params) {
  if (z.dim() != s.dim()) throw DimensionMismatch("a_priori_enclosure: dimension mismatch");
  const Box hull = interval_hull(z);
  const Eigen::Index n = z.dim();

  auto image = [&](const Box& y) {
    const std::vector<Interval> f = s.interval_eval(y);
    Vec lo(n), hi(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Interval& fi = f[static_cast<std::size_t>(i)];
      lo(i) = hull.lower(i) + h * std::min(0.0, fi.lower);
      hi(i) = hull.upper(i) + h * std::max(0.0, fi.upper);
    }
    return Box(lo, hi);
  };

  Box y;
  try {
    y = image(hull);
  } catch (const DomainError&) {
    throw EnclosureFailure("a_priori_enclosure: vector field undefined on the initial hull");
  }
  for (int it = 0; it < params.max_picard_iters; ++it) {
    // Inflate about the center. The floor tied to the widest axis lets a flat axis keep up with
    // drift coming from the others.
    const Vec c = y.center();
    const double floor = 0.1 * (params.enclosure_inflation - 1.0) * y.radius().maxCoeff();
    const Vec r = y.radius() * params.enclosure_inflation + Vec::Constant(n, 1e-12 + floor) +
                  1e-9 * (hull.width() + c.cwiseAbs()) * (it == 0 ? 0.0 : 1.0);
    const Box trial(c - r, c + r);
    Box next;
    try {
      next = image(trial);
    } catch (const DomainError&) {
      throw EnclosureFailure("a_priori_enclosure: vector field undefined on the trial box");
    }
    if (trial.contains(next)) {
      // next is itself an enclosure; one more image tightens it further.
      try {
        const Box tighter = image(next);
        if (next.contains(tighter)) return tighter;
      } catch (const DomainError&) {
      }
      return next;
    }
    y = Box(next.lower.cwiseMin(trial.lower), next.upper.cwiseMax(trial.upper));
  }
  throw EnclosureFailure("a_priori_enclosure: no enclosure after " + std::to_string(params.max_picard_iters) +
                         " iterations");
}

Zonotope outer_step(const System& s, const Zonotope& z, double h, const OuterParams& params) {
  if (z.dim() != s.dim()) throw DimensionMismatch("outer_step: dimension mismatch");
  if (h < 0.0) throw Error("outer_step: negative step");
  if (h == 0.0) return z;
  return step_with_splits(s, z, h, params, 0);
}

Zonotope outer_point(const System& s, const Vec& x, double h, const OuterParams& params) {
  return outer_step(s, Zonotope::point(x), h, params);
}

Zonotope reduce_outer(const Zonotope& z, int max_generators) {
  const Eigen::Index n = z.dim();
  const Eigen::Index p = z.num_generators();
  const Eigen::Index keep_limit = std::max<Eigen::Index>(max_generators, n);
  if (p <= keep_limit) return z;
  // Keep p_keep largest generators, box the remaining ones (n new columns).
  const Eigen::Index keep = keep_limit - n;
  std::vector<int> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> score(static_cast<std::size_t>(p));
  for (Eigen::Index j = 0; j < p; ++j) {
    score[static_cast<std::size_t>(j)] = z.generator(j).lpNorm<1>() - z.generator(j).lpNorm<Eigen::Infinity>();
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return score[static_cast<std::size_t>(a)] > score[static_cast<std::size_t>(b)];
  });
  Mat g(n, keep + n);
  Vec box = Vec::Zero(n);
  for (Eigen::Index k = 0; k < p; ++k) {
    const int j = order[static_cast<std::size_t>(k)];
    if (k < keep) {
      g.col(k) = z.generator(j);
    } else {
      box += z.generator(j).cwiseAbs();
    }
  }
  g.rightCols(n) = box.asDiagonal();
  return Zonotope(z.center(), g).without_zero_generators();
}

}  // namespace zonoreach
