#pragma once

#include <string>
#include <vector>

#include "zonoreach/outer.hpp"
#include "zonoreach/parallel.hpp"
#include "zonoreach/system.hpp"
#include "zonoreach/zonotope.hpp"

namespace zonoreach {

struct InnerParams {
  double epsilon = 1e-6;
  int boundary_budget = 0;  // 0: 4 n (n-1), at least 2n
  OuterParams outer;
  double h = 0.05;
  int N = 1;
  // Columns kept (by outer reduction) in the starting candidate; 0: no reduction.
  int max_generators = 0;
  bool sort_generators = true;
  bool retry_half_step = true;
  ExecPolicy policy = ExecPolicy::Parallel;
};

[[nodiscard]] int effective_budget(const InnerParams& params, int n);

struct StepRecord {
  Zonotope U_k;
  std::vector<Zonotope> boundary_pieces;
  Zonotope outer_whole;
  std::vector<Zonotope> outer_pieces;
  Zonotope candidate;
  bool verified = false;
  std::string failure_stage;  // empty when verified
  std::string failure;
  double h = 0.0;
  int substeps = 1;
};

// Cross product of the n-1 longest linearly independent generators.
[[nodiscard]] Vec attitude(const Zonotope& zo);

// Shrinks and shifts generators of the candidate until it misses every boundary outer set.
// Throws ContractionCollapse when a generator cannot be shortened to clear a piece.
[[nodiscard]] Zonotope contract(const Zonotope& candidate, const std::vector<Zonotope>& boundary_outers,
                                double epsilon, bool sort_generators = true);

// Backward outer set of the candidate center lies inside u_k.
[[nodiscard]] bool verify_candidate(const System& s, const Zonotope& candidate, const Zonotope& u_k, double h,
                                    const OuterParams& params = {});

// One step with step size h; never throws, failures are recorded in the result.
[[nodiscard]] StepRecord inner_step(const System& s, const Zonotope& u_k, double h, const InnerParams& params);
[[nodiscard]] StepRecord inner_step(const System& s, const Zonotope& u_k, const InnerParams& params);

// Verified prefix of the N-step run. The first unverified step, if any, goes to *failed.
[[nodiscard]] std::vector<StepRecord> inner_reach(const System& s, const Zonotope& x0, const InnerParams& params,
                                                  StepRecord* failed = nullptr);

}  // namespace zonoreach
