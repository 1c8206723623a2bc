#include "zonoreach/inner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "zonoreach/errors.hpp"
#include "zonoreach/kernels.hpp"
#include "zonoreach/lp.hpp"
#include "zonoreach/tiling.hpp"

namespace zonoreach {

namespace {

double binomial(int p, int k) {
  if (k < 0 || k > p) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (p - k + i) / i;
  return r;
}

// Volume when the subset sum is cheap, interval-hull volume otherwise; only used for ordering.
double ordering_volume(const Zonotope& z) {
  const int n = static_cast<int>(z.dim());
  if (binomial(static_cast<int>(z.num_generators()), n) <= 5000.0) return volume(z);
  return interval_hull(z).width().prod();
}

StepRecord failed_record(StepRecord rec, std::string stage, std::string what) {
  rec.verified = false;
  rec.failure_stage = std::move(stage);
  rec.failure = std::move(what);
  return rec;
}

}  // namespace

int effective_budget(const InnerParams& params, int n) {
  if (params.boundary_budget > 0) return params.boundary_budget;
  return std::max(4 * n * (n - 1), 2 * n);
}

Vec attitude(const Zonotope& zo) {
  const Eigen::Index n = zo.dim();
  std::vector<int> order(static_cast<std::size_t>(zo.num_generators()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return zo.generator(a).norm() > zo.generator(b).norm(); });
  Mat span(n, 0);
  for (int j : order) {
    if (span.cols() == n - 1) break;
    Mat trial(n, span.cols() + 1);
    trial << span, zo.generator(j);
    if (numeric_rank(trial) == trial.cols()) span = std::move(trial);
  }
  if (span.cols() != n - 1) throw RankDeficient("attitude: fewer than n-1 independent generators");
  return cross_product(span);
}

Zonotope contract(const Zonotope& candidate, const std::vector<Zonotope>& boundary_outers, double epsilon,
                  bool sort_generators) {
  if (epsilon <= 0.0) throw Error("contract: epsilon must be positive");
  for (const Zonotope& o : boundary_outers) {
    if (o.dim() != candidate.dim()) throw DimensionMismatch("contract: dimension mismatch");
  }
  std::vector<std::size_t> pieces(boundary_outers.size());
  std::iota(pieces.begin(), pieces.end(), 0);
  std::vector<double> vol(boundary_outers.size());
  for (std::size_t i = 0; i < boundary_outers.size(); ++i) vol[i] = ordering_volume(boundary_outers[i]);
  std::stable_sort(pieces.begin(), pieces.end(), [&](std::size_t a, std::size_t b) { return vol[a] > vol[b]; });

  Vec c = candidate.center();
  Mat g = candidate.generators();
  for (std::size_t pi : pieces) {
    const Zonotope& piece = boundary_outers[pi];
    std::vector<int> order(static_cast<std::size_t>(g.cols()));
    std::iota(order.begin(), order.end(), 0);
    if (sort_generators) {
      const Vec at = attitude(piece);
      std::vector<double> cosine(order.size());
      for (Eigen::Index l = 0; l < g.cols(); ++l) {
        const double denom = g.col(l).norm() * at.norm();
        cosine[static_cast<std::size_t>(l)] = denom > 0.0 ? std::abs(g.col(l).dot(at)) / denom : 0.0;
      }
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return cosine[static_cast<std::size_t>(a)] > cosine[static_cast<std::size_t>(b)];
      });
    }
    // Work on the generators in processing order; deleted ones are dropped at the end.
    Mat sorted(g.rows(), g.cols());
    for (std::size_t k = 0; k < order.size(); ++k) sorted.col(static_cast<Eigen::Index>(k)) = g.col(order[k]);
    g = std::move(sorted);
    std::vector<bool> alive(static_cast<std::size_t>(g.cols()), true);

    auto current = [&]() {
      std::vector<int> keep;
      for (std::size_t k = 0; k < alive.size(); ++k) {
        if (alive[k]) keep.push_back(static_cast<int>(k));
      }
      Mat m(g.rows(), static_cast<Eigen::Index>(keep.size()));
      for (std::size_t k = 0; k < keep.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = g.col(keep[k]);
      return std::make_pair(Zonotope(c, m), keep);
    };

    for (Eigen::Index l = 0; l < g.cols(); ++l) {
      auto [zu, keep] = current();
      const auto pos = std::find(keep.begin(), keep.end(), static_cast<int>(l)) - keep.begin();
      const std::optional<Interval> range = intersection_range(zu, piece, pos);
      if (!range) break;
      const double lo = range->lower;
      const double hi = range->upper;
      if (lo <= -1.0 + 1e-9 && hi >= 1.0 - 1e-9) {
        alive[static_cast<std::size_t>(l)] = false;
        continue;
      }
      const double low_len = (lo - epsilon) - (-1.0);
      const double high_len = 1.0 - (hi + epsilon);
      if (low_len < 0.0 && high_len < 0.0) {
        throw ContractionCollapse("contract: generator " + std::to_string(l) + " cannot clear the boundary piece");
      }
      double g_lo = 0.0;
      double g_hi = 0.0;
      if (low_len >= high_len) {
        g_lo = -1.0;
        g_hi = lo - epsilon;
      } else {
        g_lo = hi + epsilon;
        g_hi = 1.0;
      }
      c += 0.5 * (g_hi + g_lo) * g.col(l);
      g.col(l) *= 0.5 * (g_hi - g_lo);
    }
    auto [zu, keep] = current();
    g = zu.generators();
    if (!zonotopes_disjoint(zu, piece)) {
      throw ContractionCollapse("contract: candidate still meets a boundary piece after all generators");
    }
  }
  return Zonotope(c, g);
}

bool verify_candidate(const System& s, const Zonotope& candidate, const Zonotope& u_k, double h,
                      const OuterParams& params) {
  const Zonotope back = outer_point(time_invert(s), candidate.center(), h, params);
  return contains_zonotope(back, u_k);
}

StepRecord inner_step(const System& s, const Zonotope& u_k, double h, const InnerParams& params) {
  StepRecord rec;
  rec.U_k = u_k;
  rec.h = h;
  const int n = s.dim();
  try {
    rec.boundary_pieces = refine_boundary(u_k, effective_budget(params, n), params.policy);
  } catch (const std::exception& e) {
    return failed_record(std::move(rec), "boundary", e.what());
  }
  try {
    rec.outer_whole = outer_step(s, u_k, h, params.outer);
  } catch (const std::exception& e) {
    return failed_record(std::move(rec), "outer", e.what());
  }
  for (kernels::OuterResult& r : kernels::outer_steps(s, rec.boundary_pieces, h, params.outer, params.policy)) {
    if (!r.ok) return failed_record(std::move(rec), "outer", r.error);
    rec.outer_pieces.push_back(std::move(r.set));
  }
  try {
    Zonotope start = rec.outer_whole;
    if (params.max_generators > 0) start = reduce_outer(start, params.max_generators);
    rec.candidate = contract(start, rec.outer_pieces, params.epsilon, params.sort_generators);
  } catch (const std::exception& e) {
    return failed_record(std::move(rec), "contract", e.what());
  }
  try {
    rec.verified = verify_candidate(s, rec.candidate, u_k, h, params.outer);
  } catch (const std::exception& e) {
    return failed_record(std::move(rec), "verify", e.what());
  }
  if (!rec.verified) return failed_record(std::move(rec), "verify", "backward outer set of the center leaves U_k");
  return rec;
}

StepRecord inner_step(const System& s, const Zonotope& u_k, const InnerParams& params) {
  return inner_step(s, u_k, params.h, params);
}

std::vector<StepRecord> inner_reach(const System& s, const Zonotope& x0, const InnerParams& params,
                                    StepRecord* failed) {
  std::vector<StepRecord> records;
  Zonotope u = x0;
  for (int k = 0; k < params.N; ++k) {
    StepRecord rec = inner_step(s, u, params.h, params);
    if (!rec.verified && params.retry_half_step) {
      StepRecord first = inner_step(s, u, 0.5 * params.h, params);
      if (first.verified) {
        StepRecord second = inner_step(s, first.candidate, 0.5 * params.h, params);
        if (second.verified) {
          second.U_k = u;
          second.h = params.h;
          second.substeps = 2;
          rec = std::move(second);
        }
      }
    }
    if (!rec.verified) {
      if (failed != nullptr) *failed = std::move(rec);
      break;
    }
    u = rec.candidate;
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace zonoreach
