#pragma once

#include <limits>
#include <optional>

#include "zonoreach/interval.hpp"
#include "zonoreach/numeric.hpp"
#include "zonoreach/zonotope.hpp"

namespace zonoreach {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// minimize objective . x  subject to  eq_matrix x = eq_rhs,  var_lower <= x <= var_upper.
// Bounds may be infinite.
struct LinearProgram {
  Vec objective;
  Mat eq_matrix;
  Vec eq_rhs;
  Vec var_lower;
  Vec var_upper;

  [[nodiscard]] Eigen::Index num_vars() const { return objective.size(); }
  [[nodiscard]] Eigen::Index num_rows() const { return eq_rhs.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  Vec point;
};

struct SolverOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  long max_iterations = 1'000'000;
};

// Two-phase dense simplex with bounded variables and Bland's anti-cycling rule.
// Throws DimensionMismatch on inconsistent shapes and SolverFailure past the iteration cap.
[[nodiscard]] LpOutcome solve(const LinearProgram& lp, const SolverOptions& options = {});

// Range of alpha_l over the intersection of <c_u,G_u alpha> and <c_o,G_o beta>;
// std::nullopt when the two sets are disjoint.
[[nodiscard]] std::optional<Interval> intersection_range(const Zonotope& zu, const Zonotope& zo,
                                                         Eigen::Index l);

[[nodiscard]] bool zonotopes_disjoint(const Zonotope& a, const Zonotope& b);

// Sufficient containment test: inner = <c1,G1> lies in outer = <c2,G2> if some Gamma, beta give
// G1 = G2 Gamma, c2 - c1 = G2 beta and |[Gamma beta]| has row sums at most one.
// A false answer is inconclusive, not a proof of non-containment.
[[nodiscard]] bool contains_zonotope(const Zonotope& inner, const Zonotope& outer);

}  // namespace zonoreach
