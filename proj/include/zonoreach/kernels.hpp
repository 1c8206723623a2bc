#pragma once

#include <string>
#include <vector>

#include "zonoreach/outer.hpp"
#include "zonoreach/parallel.hpp"
#include "zonoreach/system.hpp"
#include "zonoreach/zonotope.hpp"

// Data-parallel hot loops. Each kernel has a plain serial loop (the reference) and an OpenMP
// version; both write result i from input i only, so their outputs are identical.
namespace zonoreach::kernels {

struct HyperplaneCandidate {
  bool full_rank = false;
  Vec unit_normal;
};

[[nodiscard]] std::vector<HyperplaneCandidate> hyperplane_candidates(const Mat& g,
                                                                     const std::vector<std::vector<int>>& subsets,
                                                                     ExecPolicy policy);

// integrate() applied to every point; a failed integration yields a NaN vector.
[[nodiscard]] std::vector<Vec> propagate_points(const System& s, const std::vector<Vec>& points, double t,
                                                double abs_tol, ExecPolicy policy);

struct OuterResult {
  Zonotope set;
  bool ok = false;
  std::string error;
};

// outer_step() applied to every set; failures are reported per entry instead of thrown.
[[nodiscard]] std::vector<OuterResult> outer_steps(const System& s, const std::vector<Zonotope>& sets, double h,
                                                   const OuterParams& params, ExecPolicy policy);

// Flags points that lie in the zonotope (LP membership with tolerance tol).
[[nodiscard]] std::vector<char> membership(const Zonotope& z, const std::vector<Vec>& points, double tol,
                                           ExecPolicy policy);

}  // namespace zonoreach::kernels
