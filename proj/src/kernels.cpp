#include "zonoreach/kernels.hpp"

#include <omp.h>

#include <limits>

#include "detail.hpp"
#include "zonoreach/errors.hpp"

namespace zonoreach::kernels {

namespace {

HyperplaneCandidate evaluate_subset(const Mat& g, const std::vector<int>& subset) {
  const Mat b = detail::select_columns(g, subset);
  const Vec v = signed_minors(b);
  HyperplaneCandidate out;
  const double norm = v.norm();
  out.full_rank = g.rows() == 1 || !is_zero(norm, detail::column_norm_product(b));
  if (out.full_rank) out.unit_normal = v / norm;
  return out;
}

OuterResult outer_one(const System& s, const Zonotope& z, double h, const OuterParams& params) {
  OuterResult r;
  try {
    r.set = outer_step(s, z, h, params);
    r.ok = true;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

// Runs body(i) for i in [0, count), serially or with a static OpenMP schedule.
template <typename Body>
void for_range(std::size_t count, ExecPolicy policy, Body&& body) {
  const auto n = static_cast<long long>(count);
  if (policy == ExecPolicy::Serial) {
    for (long long i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
    return;
  }
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace

std::vector<HyperplaneCandidate> hyperplane_candidates(const Mat& g, const std::vector<std::vector<int>>& subsets,
                                                       ExecPolicy policy) {
  std::vector<HyperplaneCandidate> out(subsets.size());
  for_range(subsets.size(), policy, [&](std::size_t i) { out[i] = evaluate_subset(g, subsets[i]); });
  return out;
}

std::vector<Vec> propagate_points(const System& s, const std::vector<Vec>& points, double t, double abs_tol,
                                  ExecPolicy policy) {
  std::vector<Vec> out(points.size());
  for_range(points.size(), policy, [&](std::size_t i) {
    try {
      out[i] = integrate(s, points[i], t, abs_tol);
    } catch (const std::exception&) {
      out[i] = Vec::Constant(points[i].size(), std::numeric_limits<double>::quiet_NaN());
    }
  });
  return out;
}

std::vector<OuterResult> outer_steps(const System& s, const std::vector<Zonotope>& sets, double h,
                                     const OuterParams& params, ExecPolicy policy) {
  std::vector<OuterResult> out(sets.size());
  for_range(sets.size(), policy, [&](std::size_t i) { out[i] = outer_one(s, sets[i], h, params); });
  return out;
}

std::vector<char> membership(const Zonotope& z, const std::vector<Vec>& points, double tol, ExecPolicy policy) {
  std::vector<char> out(points.size(), 0);
  for_range(points.size(), policy, [&](std::size_t i) {
    // An exception must not leave an OpenMP region; a point that cannot be decided counts as outside.
    try {
      out[i] = points[i].allFinite() && contains_point(z, points[i], tol) ? 1 : 0;
    } catch (const std::exception&) {
      out[i] = 0;
    }
  });
  return out;
}

}  // namespace zonoreach::kernels
