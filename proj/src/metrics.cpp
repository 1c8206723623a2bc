#include "zonoreach/metrics.hpp"

#include <cmath>
#include <limits>

#include "zonoreach/errors.hpp"
#include "zonoreach/kernels.hpp"
#include "zonoreach/lp.hpp"
#include "zonoreach/tiling.hpp"

namespace zonoreach {

namespace {

std::vector<Vec> draw_uniform(const Zonotope& z, int count, std::uint64_t seed) {
  Rng rng(seed);
  const UniformSampler draw(z);
  std::vector<Vec> points;
  points.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) points.push_back(draw(rng));
  return points;
}

}  // namespace

std::vector<double> width_ratios(const Zonotope& u, const Box& o) {
  if (u.dim() != o.dim()) throw DimensionMismatch("gamma_min: dimension mismatch");
  std::vector<double> ratios;
  for (Eigen::Index i = 0; i < u.dim(); ++i) {
    const double wo = o.upper(i) - o.lower(i);
    if (!(wo > 0.0)) throw Error("gamma_min: outer set has zero width on axis " + std::to_string(i));
    const double wu = 2.0 * u.generators().row(i).cwiseAbs().sum();
    ratios.push_back(wu / wo);
  }
  return ratios;
}

double gamma_min(const Zonotope& u, const Box& o) {
  double m = std::numeric_limits<double>::infinity();
  for (double r : width_ratios(u, o)) m = std::min(m, r);
  return m;
}

double gamma_min(const Zonotope& u, const Zonotope& o) { return gamma_min(u, interval_hull(o)); }

Box simulation_hull(const System& s, const Zonotope& x0, double t, int count, std::uint64_t seed, ExecPolicy policy) {
  if (count < 1) throw Error("simulation_hull: need at least one sample");
  const std::vector<Vec> ends = kernels::propagate_points(s, draw_uniform(x0, count, seed), t, 1e-9, policy);
  Vec lo = ends.front();
  Vec hi = ends.front();
  for (const Vec& e : ends) {
    if (!e.allFinite()) throw Error("simulation_hull: integration failed");
    lo = lo.cwiseMin(e);
    hi = hi.cwiseMax(e);
  }
  return Box(lo, hi);
}

double soundness_check(const System& s, const Zonotope& u, const Zonotope& x0, double t, int count,
                       std::uint64_t seed, ExecPolicy policy) {
  if (count < 1) throw Error("soundness_check: need at least one sample");
  const System back = time_invert(s);
  const std::vector<Vec> ends = kernels::propagate_points(back, draw_uniform(u, count, seed), t, 1e-9, policy);
  const Box hull = interval_hull(x0);
  const Vec pad = Vec::Constant(x0.dim(), 1e-6);
  const Zonotope inflated(x0.center(), [&] {
    Mat g(x0.dim(), x0.num_generators() + x0.dim());
    g << x0.generators(), Mat(pad.asDiagonal());
    return g;
  }());
  const Box padded(hull.lower - pad, hull.upper + pad);
  std::vector<Vec> candidates;
  for (const Vec& e : ends) {
    if (e.allFinite() && padded.contains(e)) candidates.push_back(e);
  }
  int inside = 0;
  for (char m : kernels::membership(inflated, candidates, 1e-12, policy)) inside += m;
  return static_cast<double>(inside) / count;
}

}  // namespace zonoreach
