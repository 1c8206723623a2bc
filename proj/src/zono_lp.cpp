#include <string>

#include "zonoreach/errors.hpp"
#include "zonoreach/lp.hpp"

namespace zonoreach {

namespace {

// c_u + G_u alpha = c_o + G_o beta  with alpha, beta in [-1,1]; variables ordered (alpha, beta).
LinearProgram joint_program(const Zonotope& zu, const Zonotope& zo) {
  if (zu.dim() != zo.dim()) {
    throw DimensionMismatch("joint LP: dimension " + std::to_string(zu.dim()) + " vs " + std::to_string(zo.dim()));
  }
  const Eigen::Index pu = zu.num_generators();
  const Eigen::Index po = zo.num_generators();
  LinearProgram lp;
  lp.objective = Vec::Zero(pu + po);
  lp.eq_matrix.resize(zu.dim(), pu + po);
  lp.eq_matrix << zu.generators(), -zo.generators();
  lp.eq_rhs = zo.center() - zu.center();
  lp.var_lower = Vec::Constant(pu + po, -1.0);
  lp.var_upper = Vec::Constant(pu + po, 1.0);
  return lp;
}

SolverOptions query_options() {
  SolverOptions options;
  options.feasibility_tol = numeric_config().lp_feasibility;
  return options;
}

}  // namespace

std::optional<Interval> intersection_range(const Zonotope& zu, const Zonotope& zo, Eigen::Index l) {
  LinearProgram lp = joint_program(zu, zo);
  if (l < 0 || l >= zu.num_generators()) throw Error("intersection_range: generator index out of range");
  lp.objective(l) = 1.0;
  const LpOutcome lo = solve(lp, query_options());
  if (lo.status != LpStatus::Optimal) return std::nullopt;
  lp.objective(l) = -1.0;
  const LpOutcome hi = solve(lp, query_options());
  if (hi.status != LpStatus::Optimal) return std::nullopt;
  return Interval{lo.value, -hi.value};
}

bool zonotopes_disjoint(const Zonotope& a, const Zonotope& b) {
  return solve(joint_program(a, b), query_options()).status == LpStatus::Infeasible;
}

bool contains_zonotope(const Zonotope& inner, const Zonotope& outer) {
  if (inner.dim() != outer.dim()) throw DimensionMismatch("contains_zonotope: dimension mismatch");
  const Eigen::Index n = inner.dim();
  const Eigen::Index p1 = inner.num_generators();
  const Eigen::Index p2 = outer.num_generators();

  if (p2 == 0) {
    const double scale = std::max(1.0, outer.center().cwiseAbs().maxCoeff());
    const bool flat = p1 == 0 || inner.generators().cwiseAbs().maxCoeff() <= numeric_config().lp_feasibility * scale;
    return flat && (inner.center() - outer.center()).cwiseAbs().maxCoeff() <= numeric_config().lp_feasibility * scale;
  }

  // Variables: Gamma+ (p2*p1), Gamma- (p2*p1), beta+ (p2), beta- (p2), slack (p2); all >= 0.
  // Gamma entries indexed (i, j) -> i * p1 + j.
  const Eigen::Index ng = p2 * p1;
  const Eigen::Index gp = 0;
  const Eigen::Index gm = ng;
  const Eigen::Index bp = 2 * ng;
  const Eigen::Index bm = 2 * ng + p2;
  const Eigen::Index sl = 2 * ng + 2 * p2;
  const Eigen::Index nv = sl + p2;
  const Eigen::Index rows = n * p1 + n + p2;

  LinearProgram lp;
  lp.objective = Vec::Zero(nv);
  lp.eq_matrix = Mat::Zero(rows, nv);
  lp.eq_rhs = Vec::Zero(rows);
  lp.var_lower = Vec::Zero(nv);
  lp.var_upper = Vec::Constant(nv, kInf);

  const Mat& g1 = inner.generators();
  const Mat& g2 = outer.generators();
  // G2 * Gamma = G1, column by column.
  for (Eigen::Index j = 0; j < p1; ++j) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const Eigen::Index row = j * n + r;
      for (Eigen::Index i = 0; i < p2; ++i) {
        lp.eq_matrix(row, gp + i * p1 + j) = g2(r, i);
        lp.eq_matrix(row, gm + i * p1 + j) = -g2(r, i);
      }
      lp.eq_rhs(row) = g1(r, j);
    }
  }
  // G2 * beta = c2 - c1.
  const Vec offset = outer.center() - inner.center();
  for (Eigen::Index r = 0; r < n; ++r) {
    const Eigen::Index row = n * p1 + r;
    for (Eigen::Index i = 0; i < p2; ++i) {
      lp.eq_matrix(row, bp + i) = g2(r, i);
      lp.eq_matrix(row, bm + i) = -g2(r, i);
    }
    lp.eq_rhs(row) = offset(r);
  }
  // Row sums of |Gamma| plus |beta| at most one.
  for (Eigen::Index i = 0; i < p2; ++i) {
    const Eigen::Index row = n * p1 + n + i;
    for (Eigen::Index j = 0; j < p1; ++j) {
      lp.eq_matrix(row, gp + i * p1 + j) = 1.0;
      lp.eq_matrix(row, gm + i * p1 + j) = 1.0;
    }
    lp.eq_matrix(row, bp + i) = 1.0;
    lp.eq_matrix(row, bm + i) = 1.0;
    lp.eq_matrix(row, sl + i) = 1.0;
    lp.eq_rhs(row) = 1.0;
  }
  return solve(lp, query_options()).status != LpStatus::Infeasible;
}

}  // namespace zonoreach
