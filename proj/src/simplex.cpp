#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "zonoreach/errors.hpp"
#include "zonoreach/lp.hpp"

namespace zonoreach {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kBoundSlack = 1e-12;

// Standard-form column: original x = shift + sign * y with y in [0, upper].
struct Column {
  Eigen::Index original;
  double sign;
  double upper;
};

class Tableau {
 public:
  Tableau(const Mat& a, const Vec& b, std::vector<double> upper, const SolverOptions& options)
      : m_(a.rows()), n_(a.cols()), width_(a.cols() + a.rows()), options_(options) {
    cells_.assign(static_cast<std::size_t>(m_ * width_), 0.0);
    rhs_.resize(static_cast<std::size_t>(m_));
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double flip = b(i) < 0.0 ? -1.0 : 1.0;
      for (Eigen::Index j = 0; j < n_; ++j) at(i, j) = flip * a(i, j);
      at(i, n_ + i) = 1.0;
      rhs_[static_cast<std::size_t>(i)] = flip * b(i);
    }
    original_ = cells_;
    upper_ = std::move(upper);
    upper_.resize(static_cast<std::size_t>(width_), kInf);
    at_upper_.assign(static_cast<std::size_t>(width_), false);
    basis_.resize(static_cast<std::size_t>(m_));
    in_basis_.assign(static_cast<std::size_t>(width_), 0);
    for (Eigen::Index i = 0; i < m_; ++i) {
      basis_[static_cast<std::size_t>(i)] = n_ + i;
      in_basis_[static_cast<std::size_t>(n_ + i)] = 1;
    }
    beta_ = rhs_;
  }

  enum class Result { Optimal, Unbounded };

  Result run(const std::vector<double>& cost, bool allow_artificial) {
    std::vector<double> cb(static_cast<std::size_t>(m_));
    while (true) {
      if (++iterations_ > options_.max_iterations) {
        throw SolverFailure("simplex: iteration cap of " + std::to_string(options_.max_iterations) + " exceeded");
      }
      if (iterations_ % 64 == 0) recompute_beta();

      double cost_scale = 1.0;
      for (double c : cost) cost_scale = std::max(cost_scale, std::abs(c));
      const double opt_tol = options_.optimality_tol * cost_scale;

      for (Eigen::Index i = 0; i < m_; ++i) cb[static_cast<std::size_t>(i)] = cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];

      // Bland: lowest-index improving column.
      Eigen::Index entering = -1;
      const Eigen::Index limit = allow_artificial ? width_ : n_;
      for (Eigen::Index j = 0; j < limit; ++j) {
        if (is_basic(j)) continue;
        const bool upper_side = at_upper_[static_cast<std::size_t>(j)];
        if (!upper_side && upper_[static_cast<std::size_t>(j)] <= 0.0) continue;
        double d = cost[static_cast<std::size_t>(j)];
        for (Eigen::Index i = 0; i < m_; ++i) d -= cb[static_cast<std::size_t>(i)] * at(i, j);
        if ((!upper_side && d < -opt_tol) || (upper_side && d > opt_tol)) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return Result::Optimal;

      const bool decreasing = at_upper_[static_cast<std::size_t>(entering)];
      const double sigma = decreasing ? -1.0 : 1.0;
      // Harris ratio test: bounds may be overshot by kBoundSlack, which lets the second pass pick
      // the largest pivot among the nearly blocking rows instead of a tiny one.
      auto ratio = [&](Eigen::Index i, double slack, bool& to_upper) {
        const auto bi = static_cast<std::size_t>(i);
        const double a = sigma * at(i, entering);
        const double ub = upper_[static_cast<std::size_t>(basis_[bi])];
        if (a > kPivotTol) {
          to_upper = false;
          return (std::max(beta_[bi], 0.0) + slack) / a;
        }
        if (a < -kPivotTol && std::isfinite(ub)) {
          to_upper = true;
          return (std::max(ub - beta_[bi], 0.0) + slack) / (-a);
        }
        return kInf;
      };
      double relaxed = kInf;
      for (Eigen::Index i = 0; i < m_; ++i) {
        bool to_upper = false;
        relaxed = std::min(relaxed, ratio(i, kBoundSlack, to_upper));
      }
      double step = upper_[static_cast<std::size_t>(entering)];
      Eigen::Index leave_row = -1;
      bool leave_to_upper = false;
      if (relaxed < step) {
        double best_pivot = 0.0;
        for (Eigen::Index i = 0; i < m_; ++i) {
          bool to_upper = false;
          const double t = ratio(i, 0.0, to_upper);
          if (t > relaxed) continue;
          const double mag = std::abs(at(i, entering));
          const bool better = mag > best_pivot ||
                              (mag == best_pivot && basis_[static_cast<std::size_t>(i)] <
                                                        basis_[static_cast<std::size_t>(leave_row)]);
          if (better) {
            best_pivot = mag;
            leave_row = i;
            leave_to_upper = to_upper;
            step = t;
          }
        }
      }
      if (!std::isfinite(step)) return Result::Unbounded;

      for (Eigen::Index i = 0; i < m_; ++i) beta_[static_cast<std::size_t>(i)] -= sigma * at(i, entering) * step;
      const double entering_value = decreasing ? upper_[static_cast<std::size_t>(entering)] - step : step;

      if (leave_row < 0) {
        at_upper_[static_cast<std::size_t>(entering)] = !decreasing;
        continue;
      }
      const Eigen::Index leaving = basis_[static_cast<std::size_t>(leave_row)];
      at_upper_[static_cast<std::size_t>(leaving)] = leave_to_upper;
      pivot(leave_row, entering);
      beta_[static_cast<std::size_t>(leave_row)] = entering_value;
      at_upper_[static_cast<std::size_t>(entering)] = false;
    }
  }

  [[nodiscard]] double artificial_sum() const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] >= n_) s += std::max(beta_[static_cast<std::size_t>(i)], 0.0);
    }
    return s;
  }

  // After phase one: pivot zero-valued artificials out where a structural column allows it,
  // then pin every artificial to zero.
  void retire_artificials() {
    for (Eigen::Index r = 0; r < m_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < n_) continue;
      Eigen::Index best = -1;
      double best_mag = 1e-9;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (is_basic(j)) continue;
        if (std::abs(at(r, j)) > best_mag) {
          best_mag = std::abs(at(r, j));
          best = j;
        }
      }
      if (best < 0) continue;
      const double value = at_upper_[static_cast<std::size_t>(best)] ? upper_[static_cast<std::size_t>(best)] : 0.0;
      at_upper_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = false;
      pivot(r, best);
      beta_[static_cast<std::size_t>(r)] = value;
      at_upper_[static_cast<std::size_t>(best)] = false;
    }
    for (Eigen::Index j = n_; j < width_; ++j) upper_[static_cast<std::size_t>(j)] = 0.0;
    recompute_beta();
  }

  [[nodiscard]] std::vector<double> structural_values() const {
    std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
    for (Eigen::Index j = 0; j < n_; ++j) {
      if (at_upper_[static_cast<std::size_t>(j)]) y[static_cast<std::size_t>(j)] = upper_[static_cast<std::size_t>(j)];
    }
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index b = basis_[static_cast<std::size_t>(i)];
      if (b < n_) {
        y[static_cast<std::size_t>(b)] = std::clamp(beta_[static_cast<std::size_t>(i)], 0.0, upper_[static_cast<std::size_t>(b)]);
      }
    }
    return y;
  }

  [[nodiscard]] double rhs_scale() const {
    double s = 1.0;
    for (double v : rhs_) s = std::max(s, std::abs(v));
    return s;
  }

 private:
  double& at(Eigen::Index i, Eigen::Index j) { return cells_[static_cast<std::size_t>(i * width_ + j)]; }
  [[nodiscard]] double at(Eigen::Index i, Eigen::Index j) const { return cells_[static_cast<std::size_t>(i * width_ + j)]; }

  [[nodiscard]] bool is_basic(Eigen::Index j) const { return in_basis_[static_cast<std::size_t>(j)] != 0; }

  void pivot(Eigen::Index r, Eigen::Index j) {
    const double p = at(r, j);
    double* row_r = &cells_[static_cast<std::size_t>(r * width_)];
    for (Eigen::Index k = 0; k < width_; ++k) row_r[k] /= p;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, j);
      if (f == 0.0) continue;
      double* row_i = &cells_[static_cast<std::size_t>(i * width_)];
      for (Eigen::Index k = 0; k < width_; ++k) row_i[k] -= f * row_r[k];
      row_i[j] = 0.0;
    }
    in_basis_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = 0;
    in_basis_[static_cast<std::size_t>(j)] = 1;
    basis_[static_cast<std::size_t>(r)] = j;
  }

  // beta = B^{-1} (b - sum over nonbasic-at-upper of A_j u_j); B^{-1} sits in the artificial block.
  void recompute_beta() {
    std::vector<double> eff = rhs_;
    for (Eigen::Index j = 0; j < width_; ++j) {
      if (!at_upper_[static_cast<std::size_t>(j)] || is_basic(j)) continue;
      const double u = upper_[static_cast<std::size_t>(j)];
      for (Eigen::Index i = 0; i < m_; ++i) eff[static_cast<std::size_t>(i)] -= original_[static_cast<std::size_t>(i * width_ + j)] * u;
    }
    for (Eigen::Index i = 0; i < m_; ++i) {
      double v = 0.0;
      for (Eigen::Index k = 0; k < m_; ++k) v += at(i, n_ + k) * eff[static_cast<std::size_t>(k)];
      beta_[static_cast<std::size_t>(i)] = v;
    }
  }

  Eigen::Index m_;
  Eigen::Index n_;
  Eigen::Index width_;
  SolverOptions options_;
  std::vector<double> cells_;
  std::vector<double> original_;
  std::vector<double> rhs_;
  std::vector<double> upper_;
  std::vector<bool> at_upper_;
  std::vector<Eigen::Index> basis_;
  std::vector<char> in_basis_;
  std::vector<double> beta_;
  long iterations_ = 0;
};

}  // namespace

LpOutcome solve(const LinearProgram& lp, const SolverOptions& options) {
  const Eigen::Index nv = lp.objective.size();
  if (lp.eq_matrix.cols() != nv || lp.eq_matrix.rows() != lp.eq_rhs.size() || lp.var_lower.size() != nv ||
      lp.var_upper.size() != nv) {
    throw DimensionMismatch("solve: inconsistent linear program dimensions");
  }
  for (Eigen::Index j = 0; j < nv; ++j) {
    if (lp.var_lower(j) > lp.var_upper(j) + options.feasibility_tol) return {LpStatus::Infeasible, 0.0, {}};
  }

  std::vector<Column> columns;
  Vec shift = Vec::Zero(nv);
  for (Eigen::Index j = 0; j < nv; ++j) {
    const double lo = lp.var_lower(j);
    const double hi = lp.var_upper(j);
    if (std::isfinite(lo)) {
      shift(j) = lo;
      columns.push_back({j, 1.0, std::isfinite(hi) ? std::max(hi - lo, 0.0) : kInf});
    } else if (std::isfinite(hi)) {
      shift(j) = hi;
      columns.push_back({j, -1.0, kInf});
    } else {
      columns.push_back({j, 1.0, kInf});
      columns.push_back({j, -1.0, kInf});
    }
  }

  const auto ns = static_cast<Eigen::Index>(columns.size());
  Mat a(lp.num_rows(), ns);
  std::vector<double> cost(static_cast<std::size_t>(ns));
  std::vector<double> upper(static_cast<std::size_t>(ns));
  for (Eigen::Index k = 0; k < ns; ++k) {
    const Column& col = columns[static_cast<std::size_t>(k)];
    a.col(k) = col.sign * lp.eq_matrix.col(col.original);
    cost[static_cast<std::size_t>(k)] = col.sign * lp.objective(col.original);
    upper[static_cast<std::size_t>(k)] = col.upper;
  }
  const Vec b = lp.eq_rhs - lp.eq_matrix * shift;

  Tableau tableau(a, b, upper, options);

  std::vector<double> phase_one(static_cast<std::size_t>(ns + lp.num_rows()), 0.0);
  for (Eigen::Index i = 0; i < lp.num_rows(); ++i) phase_one[static_cast<std::size_t>(ns + i)] = 1.0;
  tableau.run(phase_one, true);
  if (tableau.artificial_sum() > options.feasibility_tol * tableau.rhs_scale()) {
    return {LpStatus::Infeasible, 0.0, {}};
  }
  tableau.retire_artificials();

  std::vector<double> phase_two(static_cast<std::size_t>(ns + lp.num_rows()), 0.0);
  std::copy(cost.begin(), cost.end(), phase_two.begin());
  if (tableau.run(phase_two, false) == Tableau::Result::Unbounded) return {LpStatus::Unbounded, 0.0, {}};

  const std::vector<double> y = tableau.structural_values();
  Vec x = shift;
  for (Eigen::Index k = 0; k < ns; ++k) {
    const Column& col = columns[static_cast<std::size_t>(k)];
    x(col.original) += col.sign * y[static_cast<std::size_t>(k)];
  }
  LpOutcome out;
  out.status = LpStatus::Optimal;
  out.value = lp.objective.dot(x);
  out.point = std::move(x);
  return out;
}

}  // namespace zonoreach
